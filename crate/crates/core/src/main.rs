fn main() {
    std::process::exit(tickdrift::cli::cli_main(std::env::args_os()));
}
