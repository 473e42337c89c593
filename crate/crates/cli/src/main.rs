fn main() {
    std::process::exit(hfischer_cli::run(std::env::args_os()));
}
