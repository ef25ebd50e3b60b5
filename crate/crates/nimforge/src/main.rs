fn main() {
    std::process::exit(nimforge::cli::run());
}
