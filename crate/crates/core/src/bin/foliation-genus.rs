fn main() {
    foliation_genus::cli::main()
}
