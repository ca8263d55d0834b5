use std::f64::consts::{PI, TAU};

use cyclopoly::datagen::billiard::{simulate, Ellipse};
use cyclopoly::datagen::quadrature::integrate;
use cyclopoly::datagen::{gen_billiard, BilliardConfig};
use cyclopoly::Point2;

fn dot(a: Point2, b: Point2) -> f64 {
    a.x * b.x + a.y * b.y
}

/// Unit outward normal from the gradient of x²/A² + y²/B².
fn gradient_normal(e: &Ellipse, p: Point2) -> Point2 {
    let g = Point2::new(p.x / (e.a * e.a), p.y / (e.b * e.b));
    g * (1.0 / g.x.hypot(g.y))
}

#[test]
fn every_bounce_lies_on_the_ellipse() {
    let run = gen_billiard(&BilliardConfig::default()).unwrap();
    let cfg = &run.metadata.config;
    assert!(run.metadata.max_boundary_residual < 1e-9);
    for (i, t) in run.trajectories.iter().enumerate() {
        let e = Ellipse::new(cfg.a_values[i / cfg.trajectories_per_cluster], cfg.b).unwrap();
        for b in &t.bounces {
            let r = (b.point.x / e.a).powi(2) + (b.point.y / e.b).powi(2) - 1.0;
            assert!(r.abs() < 1e-9, "residual {r}");
        }
    }
}

#[test]
fn every_bounce_obeys_specular_reflection() {
    let run = gen_billiard(&BilliardConfig::default()).unwrap();
    let cfg = &run.metadata.config;
    for (i, t) in run.trajectories.iter().enumerate() {
        let e = Ellipse::new(cfg.a_values[i / cfg.trajectories_per_cluster], cfg.b).unwrap();
        for b in &t.bounces {
            let n = gradient_normal(&e, b.point);
            let tangent = Point2::new(-n.y, n.x);
            // Normal component flips, tangential component is kept.
            assert!((dot(b.outgoing, n) + dot(b.incoming, n)).abs() < 1e-9);
            assert!((dot(b.outgoing, tangent) - dot(b.incoming, tangent)).abs() < 1e-9);
            assert!((b.outgoing.x.hypot(b.outgoing.y) - 1.0).abs() < 1e-12);
            assert!(b.angle > 0.0 && b.angle < PI);
            assert!((0.0..1.0).contains(&b.arclength));
        }
    }
}

#[test]
fn consecutive_bounces_are_joined_by_straight_chords() {
    let e = Ellipse::new(1.3, 1.0).unwrap();
    let t = simulate(&e, 20.0, 150.0, 30).unwrap();
    for w in t.bounces.windows(2) {
        let chord = w[1].point - w[0].point;
        let len = chord.x.hypot(chord.y);
        let cross = chord.x * w[0].outgoing.y - chord.y * w[0].outgoing.x;
        assert!(cross.abs() < 1e-9 * len.max(1.0));
        assert!(dot(chord, w[0].outgoing) > 0.0);
    }
}

#[test]
fn circle_arclength_matches_closed_form() {
    for r in [0.5, 1.0, 2.5] {
        let c = Ellipse::new(r, r).unwrap();
        for t in [0.1, 1.0, PI / 2.0, 3.0, 5.5, TAU] {
            let s = c.arclength(t);
            assert!((s - r * t).abs() <= 1e-10 * r * t, "r={r} t={t}: {s}");
        }
        assert!((c.perimeter() - TAU * r).abs() <= 1e-10 * TAU * r);
    }
}

#[test]
fn quadrature_integrates_smooth_functions() {
    let v = integrate(f64::exp, 0.0, 1.0, 1e-13);
    assert!((v - (1f64.exp() - 1.0)).abs() < 1e-12);
    let v = integrate(|x| x.sin().powi(2), 0.0, PI, 1e-13);
    assert!((v - PI / 2.0).abs() < 1e-12);
}

#[test]
fn circle_bounce_angle_is_constant() {
    // In a circle every reflection repeats the same angle with the wall.
    let c = Ellipse::new(1.0, 1.0).unwrap();
    let t = simulate(&c, 0.0, 150.0, 20).unwrap();
    let first = t.bounces[0].angle;
    for b in &t.bounces {
        assert!((b.angle - first).abs() < 1e-9);
    }
}
