mod common;

use std::f64::consts::FRAC_1_SQRT_2;

use common::{monte_carlo_signed_area, rng};
use cyclopoly::geometry::{
    abbc_signed_area, diagonal_distance, edge_slope, pcp_segment_slopes, signed_area,
};
use cyclopoly::scheme::{cyclic_shift, select_abbc, select_abcd};
use cyclopoly::DataVector;
use rand::Rng;

const TEASER: [f64; 6] = [5., 6., 7., 8., 9., 10.];

fn random_vectors(seed: u64, count: usize) -> Vec<DataVector> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=16);
            DataVector::new((0..n).map(|_| r.gen_range(-10.0..10.0)).collect()).unwrap()
        })
        .collect()
}

#[test]
fn teaser_area_is_minus_twelve() {
    let d = DataVector::new(TEASER.to_vec()).unwrap();
    assert_eq!(select_abbc(&d).signed_area(), -12.0);
    assert_eq!(abbc_signed_area(&d), -12.0);
}

#[test]
fn teaser_area_agrees_with_winding_number_integral() {
    let poly = select_abbc(&DataVector::new(TEASER.to_vec()).unwrap());
    let (mc, _) = monte_carlo_signed_area(&poly.vertices, 1_000_000, &mut rng(1));
    assert!((mc - -12.0).abs() <= 0.02 * 12.0, "monte carlo {mc}");
}

/// The closed form ½|Σ δ_j δ_{j+1} − Σ δ_j²| as it appears in print gives
/// 7.5 on the example, while the shoelace over the same vertices gives
/// |−12|. The correct expansion pairs δ_j with δ_{j+2}.
#[test]
fn printed_closed_form_disagrees_with_shoelace() {
    let d = TEASER;
    let n = d.len();
    let neighbour: f64 = (0..n).map(|j| d[j] * d[(j + 1) % n]).sum();
    let squares: f64 = d.iter().map(|v| v * v).sum();
    let printed = 0.5 * (neighbour - squares).abs();
    assert_eq!(printed, 7.5);
    let shoelace = select_abbc(&DataVector::new(d.to_vec()).unwrap()).signed_area();
    assert_ne!(printed, shoelace.abs());
    let second_neighbour: f64 = (0..n).map(|j| d[j] * d[(j + 2) % n]).sum();
    assert_eq!(0.5 * (second_neighbour - squares), shoelace);
}

#[test]
fn random_polygon_areas_match_winding_integral() {
    let mut r = rng(7);
    for d in random_vectors(11, 100) {
        let poly = select_abbc(&d);
        let exact = poly.signed_area();
        let (mc, se) = monte_carlo_signed_area(&poly.vertices, 40_000, &mut r);
        assert!(
            (mc - exact).abs() <= 5.0 * se + 1e-9,
            "n={} exact {exact} mc {mc} se {se}",
            d.dimension()
        );
        assert!((abbc_signed_area(&d) - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
    }
}

#[test]
fn shift_rotates_abbc_vertices() {
    for d in random_vectors(21, 1000) {
        let n = d.dimension();
        let base = select_abbc(&d).vertices;
        for l in [1i64, -1, 3, n as i64 + 2] {
            let shifted = select_abbc(&cyclic_shift(&d, l)).vertices;
            let offset = (l.rem_euclid(n as i64)) as usize;
            for j in 0..n {
                assert_eq!(shifted[j], base[(j + offset) % n], "n={n} l={l} j={j}");
            }
        }
    }
}

#[test]
fn abcd_is_every_second_abbc_vertex_for_even_n() {
    let mut checked = 0;
    for d in random_vectors(22, 1000) {
        let n = d.dimension();
        if n % 2 != 0 {
            continue;
        }
        let abbc = select_abbc(&d).vertices;
        let abcd = select_abcd(&d).vertices;
        assert_eq!(abcd.len(), n / 2);
        for (j, v) in abcd.iter().enumerate() {
            assert_eq!(*v, abbc[2 * j]);
        }
        checked += 1;
    }
    assert!(checked > 400);
}

#[test]
fn abbc_centroid_lies_on_diagonal() {
    for d in random_vectors(23, 1000) {
        let c = select_abbc(&d).vertex_centroid();
        assert!((c.x - c.y).abs() < 1e-12, "{c:?}");
    }
}

#[test]
fn diagonal_distance_is_pcp_slope_over_root_two() {
    for d in random_vectors(24, 1000) {
        let poly = select_abbc(&d);
        let slopes = pcp_segment_slopes(&d);
        for (v, s) in poly.vertices.iter().zip(&slopes) {
            assert!((diagonal_distance(*v) - s * FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }
}

#[test]
fn edge_slope_is_ratio_of_consecutive_pcp_slopes() {
    for d in random_vectors(25, 1000) {
        let poly = select_abbc(&d);
        let s = pcp_segment_slopes(&d);
        let n = d.dimension();
        for j in 0..n {
            if let Some(m) = edge_slope(&poly, j).unwrap().value() {
                let expected = s[(j + 1) % n] / s[j];
                assert!(
                    (m - expected).abs() <= 1e-9 * expected.abs().max(1.0),
                    "{m} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn shoelace_of_reversed_polygon_flips_sign() {
    for d in random_vectors(26, 200) {
        let mut v = select_abbc(&d).vertices;
        let a = signed_area(&v);
        v.reverse();
        assert!((signed_area(&v) + a).abs() <= 1e-9 * (1.0 + a.abs()));
    }
}
