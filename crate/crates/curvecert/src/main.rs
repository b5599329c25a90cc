fn main() {
    println!("curvecert CLI: implemented in a later step");
}
