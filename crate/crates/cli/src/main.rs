fn main() {
    std::process::exit(eplab_cli::run(std::env::args_os()));
}
