fn main() {
    std::process::exit(qroulette::commands::run());
}
