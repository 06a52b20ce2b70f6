fn main() {
    std::process::exit(mvlaguerre::verify::cli::run(std::env::args_os()));
}
