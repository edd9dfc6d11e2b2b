//! The unified arc algebra H^n: basis, products and the axiom check.

use qahh::arc::ArcAlgebra;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let h = ArcAlgebra::new(n);
    println!("H^{n}: {} matchings, dimension {}", h.matchings.len(), h.alg.dim());
    let labels: Vec<&str> = h.alg.module.basis.iter().map(|b| b.label.as_str()).collect();
    for i in 0..h.alg.dim().min(6) {
        for j in 0..h.alg.dim().min(6) {
            let p = h.alg.mul_basis(i, j);
            if !p.is_empty() {
                let terms: Vec<String> = p.iter().map(|(k, c)| format!("({c}) {}", labels[*k])).collect();
                println!("  {} * {} = {}", labels[i], labels[j], terms.join(" + "));
            }
        }
    }
    let r = h.alg.check();
    println!("axioms checked: {:?}, violations: {}", r.checked, r.violations.len());
    println!("strictly non-associative triples: {}", h.alg.associativity_failures().len());
}
