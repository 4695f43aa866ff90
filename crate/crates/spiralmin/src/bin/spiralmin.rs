fn main() {
    std::process::exit(spiralmin::cli::run());
}
