fn main() {
    std::process::exit(obversim::run_cli(std::env::args_os()));
}
