fn main() {
    std::process::exit(emg_fatigue::cli::run(std::env::args_os()));
}
