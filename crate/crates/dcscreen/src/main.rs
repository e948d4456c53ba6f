fn main() {
    std::process::exit(dcscreen::cli::run());
}
