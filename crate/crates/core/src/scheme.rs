//! Cyclic pair selection: turns a data vector into a cyclic polygon.

use crate::model::{CyclicPolygon, DataVector, Point2, Scheme};

/// ab-bc selection: vertex j is (δ_j, δ_{j+1 mod n}).
///
/// For n = 2 this yields the two-vertex polygon (δ₀,δ₁), (δ₁,δ₀).
pub fn select_abbc(d: &DataVector) -> CyclicPolygon {
    let n = d.dimension();
    let vertices = (0..n).map(|j| Point2::new(d[j], d.at(j + 1))).collect();
    CyclicPolygon {
        vertices,
        scheme: Scheme::AbBc,
        source_dimension: n,
    }
}

/// ab-cd selection: vertex j is (δ_{2j}, δ_{2j+1 mod n}). Odd n reuses δ₀
/// in the final vertex.
pub fn select_abcd(d: &DataVector) -> CyclicPolygon {
    let n = d.dimension();
    let vertices = (0..n.div_ceil(2))
        .map(|j| Point2::new(d[2 * j], d.at(2 * j + 1)))
        .collect();
    CyclicPolygon {
        vertices,
        scheme: Scheme::AbCd,
        source_dimension: n,
    }
}

pub fn select(d: &DataVector, scheme: Scheme) -> CyclicPolygon {
    match scheme {
        Scheme::AbBc => select_abbc(d),
        Scheme::AbCd => select_abcd(d),
    }
}

/// Returns (δ_{l mod n}, …, δ_{n−1+l mod n}). Negative shifts rotate the
/// other way.
pub fn cyclic_shift(d: &DataVector, l: i64) -> DataVector {
    let n = d.dimension();
    let offset = l.rem_euclid(n as i64) as usize;
    let comps = (0..n).map(|i| d.at(i + offset)).collect();
    DataVector::new(comps).expect("rotation preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dv(v: &[f64]) -> DataVector {
        DataVector::new(v.to_vec()).unwrap()
    }

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn abbc_teaser_vertices() {
        let p = select_abbc(&dv(&[5., 6., 7., 8., 9., 10.]));
        assert_eq!(
            p.vertices,
            pts(&[(5., 6.), (6., 7.), (7., 8.), (8., 9.), (9., 10.), (10., 5.)])
        );
        assert_eq!(p.scheme, Scheme::AbBc);
    }

    #[test]
    fn abbc_constant_and_two_dimensional() {
        let p = select_abbc(&dv(&[3.5; 5]));
        assert!(p.vertices.iter().all(|&v| v == Point2::new(3.5, 3.5)));
        assert_eq!(p.vertices.len(), 5);
        assert_eq!(
            select_abbc(&dv(&[1., 2.])).vertices,
            pts(&[(1., 2.), (2., 1.)])
        );
    }

    #[test]
    fn abcd_even_odd_and_scatterplot() {
        assert_eq!(
            select_abcd(&dv(&[5., 6., 7., 8., 9., 10.])).vertices,
            pts(&[(5., 6.), (7., 8.), (9., 10.)])
        );
        assert_eq!(
            select_abcd(&dv(&[1., 2., 3., 4., 5.])).vertices,
            pts(&[(1., 2.), (3., 4.), (5., 1.)])
        );
        assert_eq!(select_abcd(&dv(&[4., 9.])).vertices, pts(&[(4., 9.)]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(cyclic_shift(&dv(&[1., 2., 3.]), 1), dv(&[2., 3., 1.]));
        let d = dv(&[1., 2., 3., 4.]);
        assert_eq!(cyclic_shift(&d, 0), d);
        assert_eq!(cyclic_shift(&d, 4), d);
        assert_eq!(cyclic_shift(&d, -1), dv(&[4., 1., 2., 3.]));
    }

    #[test]
    fn vertex_count_law_exhaustive() {
        for n in 2..=64 {
            let d = dv(&(0..n).map(|i| i as f64).collect::<Vec<_>>());
            for scheme in [Scheme::AbBc, Scheme::AbCd] {
                let p = select(&d, scheme);
                assert_eq!(p.len(), scheme.vertex_count(n));
                assert_eq!(p.vertices[0], Point2::new(d[0], d[1]));
                assert_eq!(p.source_dimension, n);
            }
        }
    }

    fn vector() -> impl Strategy<Value = DataVector> {
        prop::collection::vec(-100.0f64..100.0, 2..=16).prop_map(|v| DataVector::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn abbc_shift_rotates_vertices(d in vector(), l in 0i64..40) {
            let shifted = select_abbc(&cyclic_shift(&d, l)).vertices;
            let mut rotated = select_abbc(&d).vertices;
            rotated.rotate_left(l as usize % d.dimension());
            prop_assert_eq!(shifted, rotated);
        }

        #[test]
        fn abcd_subsamples_abbc_for_even_n(d in vector()) {
            prop_assume!(d.dimension() % 2 == 0);
            let every_second: Vec<_> = select_abbc(&d).vertices.into_iter().step_by(2).collect();
            prop_assert_eq!(select_abcd(&d).vertices, every_second);
        }
    }
}
