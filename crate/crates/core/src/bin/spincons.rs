fn main() {
    std::process::exit(spincons::cli::run(std::env::args_os()));
}
