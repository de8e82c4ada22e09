use rlab_core::building::{building_ball, LocalFieldParams};
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let ball = building_ball(LocalFieldParams::new(2, 3), 2, 200_000).unwrap();
    println!("d=3 q=2 r=2 ball: {} vertices in {:?}", ball.colored.complex.num_vertices(), t.elapsed());
    let x = &ball.colored.complex;
    println!("dim = {}, edges = {}, triangles = {}", x.dim(), x.num_cells(1), x.num_cells(2));
    let mut lvl = [0usize; 3];
    for &l in &ball.levels { lvl[l as usize] += 1; }
    println!("levels: {:?}", lvl);
    // interior degrees
    let mut ok = true;
    for v in x.interior_vertices() {
        let mut split = [0usize; 3];
        for &w in x.neighbors(v) {
            split[ball.colored.edge_color(v, w) as usize] += 1;
        }
        if split != [0, 7, 7] { ok = false; println!("BAD split at {v}: {:?} level {}", split, ball.levels[v as usize]); }
    }
    println!("interior degree 7/7 everywhere: {ok}");
    let t2 = Instant::now();
    let fam = ball.colored.hecke_family().unwrap();
    println!("hecke in {:?}: adjoint_exact={} interior_comm={:.3e} commuting={}",
        t2.elapsed(), fam.adjoint_pairing_exact, fam.max_interior_commutator, fam.commuting_on_interior);
    // d=2 lattice model vs tree counts at radius 4
    let t3 = Instant::now();
    let b2 = building_ball(LocalFieldParams::new(3, 2), 4, 200_000).unwrap();
    println!("d=2 q=3 radius-4 ball: {} vertices in {:?} (expect {})",
        b2.colored.complex.num_vertices(), t3.elapsed(), 1 + 4*(1 + 3 + 9 + 27));
    let v = b2.colored.complex.num_vertices();
    let e = b2.colored.complex.num_cells(1);
    println!("acyclic: {}", e == v - 1);
}
