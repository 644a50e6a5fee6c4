fn main() {
    std::process::exit(jsrlab::cli::run());
}
