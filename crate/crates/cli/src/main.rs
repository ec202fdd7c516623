fn main() {
    std::process::exit(ncdiff_core::exprio::cli(std::env::args().skip(1).collect()));
}
