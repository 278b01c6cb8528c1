fn main() {
    println!("tropfact");
}
