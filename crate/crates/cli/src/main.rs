fn main() {
    std::process::exit(abbrx_cli::run(std::env::args_os()));
}
