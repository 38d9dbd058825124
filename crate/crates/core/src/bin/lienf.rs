fn main() {
    std::process::exit(lie_normal_form::cli::run_cli(std::env::args_os()));
}
