fn main() {
    env_logger::init();
    std::process::exit(hanoi_mpoly::cli::run());
}
