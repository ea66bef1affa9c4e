fn main() {
    std::process::exit(reptile_forge::cli::run(std::env::args_os()));
}
