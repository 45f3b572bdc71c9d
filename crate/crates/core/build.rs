fn main() {
    // Dense eigensolves go through the system OpenBLAS (which bundles LAPACK).
    println!("cargo:rustc-link-lib=dylib=openblas");
}
