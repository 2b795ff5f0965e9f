use macx::cli;

fn main() {
    std::process::exit(cli::run());
}
