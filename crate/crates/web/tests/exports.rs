use iwatsuka::model::LatticeWindow;
use iwatsuka_web::{butterfly_points, hull_patterns, state_density, widest_common_gap};

#[test]
fn butterfly_points_come_in_pairs_inside_the_free_band() {
    let pts = butterfly_points(5, 2).unwrap();
    // sum over q <= 5 of phi(q) * q, times 4 k points, two numbers each
    assert_eq!(pts.len(), (1 + 2 + 6 + 8 + 20) * 4 * 2);
    for pair in pts.chunks(2) {
        assert!((0.0..1.0).contains(&pair[0]));
        assert!(pair[1].abs() <= 4.0 + 1e-12);
    }
}

#[test]
fn hull_patterns_are_distinct_and_binary() {
    let m = 2;
    let side = (2 * m + 1) as usize;
    let flat = hull_patterns("quadratic:0,1,1,2", m).unwrap();
    assert_eq!(flat.len() % (side * side), 0);
    let patterns: Vec<&[u8]> = flat.chunks(side * side).collect();
    for (i, a) in patterns.iter().enumerate() {
        assert!(a.iter().all(|&v| v <= 1));
        assert!(patterns[i + 1..].iter().all(|b| a != b));
    }
    assert!(hull_patterns("cubic:1", m).is_err());
}

#[test]
fn gap_states_sit_on_the_interface() {
    let (lo, hi) = widest_common_gap("2pi*1/3", "2pi*2/3").unwrap();
    let m = 10;
    let density = state_density("rational:0,1", "2pi*1/3", "2pi*2/3", m, lo, hi).unwrap();
    let window = LatticeWindow::square(m);
    // horizontal interface; the outer boundary carries its own edge states, so compare
    // interface rows against interior rows only
    let (mut near, mut bulk) = (0.0, 0.0);
    for (n, w) in window.sites().iter().zip(&density) {
        if n[0].abs() > m - 3 {
            continue;
        }
        match n[1].abs() {
            0..=2 => near += w,
            5..=7 => bulk += w,
            _ => {}
        }
    }
    assert!(near > 0.0);
    assert!(near > 3.0 * bulk, "near {near} bulk {bulk}");
    assert!(state_density("rational:0,1", "2pi*1/3", "2pi*2/3", 40, lo, hi).is_err());
}
