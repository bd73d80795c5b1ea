fn main() {
    std::process::exit(simprof_cli::run(std::env::args_os()));
}
