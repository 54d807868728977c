//! Splits a labeled j-tight path into blocks of vertices sharing the same
//! edges, and checks that shuffling inside a block keeps the edge set.

use hyperpaths::combinatorics::partition_path;
use hyperpaths::JTightPath;

fn main() -> hyperpaths::Result<()> {
    let (k, j, len) = (5, 3, 5);
    let v = (k - j) * len + j;
    let vertices: Vec<u32> = (0..v as u32).map(|i| (7 * i + 3) % 31).collect();
    let path = JTightPath::new(k, j, vertices)?;
    println!("path {:?}", path.vertices);
    for (i, e) in path.edges().iter().enumerate() {
        println!("  edge {i}: {e}");
    }
    let parts = partition_path(&path)?;
    for part in &parts {
        println!("{:<15} {:?}", format!("{:?}", part.kind), part.vertices);
    }

    // reverse each block in place
    let mut edges = path.edges();
    edges.sort();
    let mut shuffled = path.vertices.clone();
    for part in &parts {
        let slots: Vec<usize> = part
            .vertices
            .iter()
            .map(|x| path.vertices.iter().position(|y| y == x).unwrap())
            .collect();
        for (&slot, &x) in slots.iter().zip(part.vertices.iter().rev()) {
            shuffled[slot] = x;
        }
    }
    let mut after = JTightPath::new(k, j, shuffled)?.edges();
    after.sort();
    println!("edge set preserved after reversing every block: {}", edges == after);
    Ok(())
}
