//! Chronological cobordisms on circles: the local merge and split rules and
//! the change-of-chronology coefficient of a saddle exchange.

use qahh::chron::{iota, merge_local, split_local, ChronCob, Curves, Handle};

fn label(l: &[bool]) -> String {
    l.iter().map(|&b| if b { "v-" } else { "v+" }).collect::<Vec<_>>().join("⊗")
}

fn main() {
    for l in [[false, false], [false, true], [true, false], [true, true]] {
        let out: Vec<String> = merge_local(&l).iter().map(|(w, c)| format!("({c}) {}", label(w))).collect();
        println!("merge {} = {}", label(&l), if out.is_empty() { "0".into() } else { out.join(" + ") });
    }
    for l in [[false], [true]] {
        let out: Vec<String> = split_local(&l).iter().map(|(w, c)| format!("({c}) {}", label(w))).collect();
        println!("split {} = {}", label(&l), out.join(" + "));
    }

    let mut c = Curves::new();
    let n: Vec<usize> = (0..4).map(|i| c.add_node(i)).collect();
    let e1 = c.add_edge(n[0], n[1]);
    c.add_edge(n[1], n[0]);
    let e2 = c.add_edge(n[2], n[3]);
    c.add_edge(n[3], n[2]);
    let merge = Handle::Saddle { lower: e1, upper: e2, seam: false, flip: false };
    let w = ChronCob::new(c.clone(), vec![merge]);
    let target = w.target();
    println!("merging two circles leaves {} circle(s), degree {:?}", target.num_circles(), w.degree());
    let twice = ChronCob::new(c.clone(), vec![merge, Handle::Saddle { lower: e1, upper: e2, seam: true, flip: false }]);
    let flipped = ChronCob::new(c, vec![merge, Handle::Saddle { lower: e1, upper: e2, seam: true, flip: true }]);
    match iota(&twice, &flipped).and_then(|r| r.unique()) {
        Ok(u) => println!("ratio between the two framings of the split: {u}"),
        Err(e) => println!("no single ratio: {e}"),
    }
}
