//! Worked examples for each public operation.

use rmdecode::harness::{oracle_nearest, schwartz_zippel_check, success_rate_experiment, ChannelSpec, DecodeRequest, DecoderId, Experiment};
use rmdecode::rs::{rs_ee_decode, rs_encode, rs_fast_soft_decode, rs_gmd_decode, rs_list_decode, rs_unique_decode};
use rmdecode::*;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn uni(p: u64, c: &[u64]) -> UniPoly {
    UniPoly::from_u64(gf(p), c).unwrap()
}

fn fes(v: &[u64]) -> Vec<Fe> {
    v.iter().map(|&x| Fe::new(x)).collect()
}

fn mp(p: u64, m: usize, d: usize, terms: &[(&[u32], u64)]) -> MultiPoly {
    MultiPoly::from_terms(gf(p), m, d, terms.iter().map(|(e, c)| (e.to_vec(), Fe::new(*c)))).unwrap()
}

fn rs(p: u64, n: usize, d: usize) -> RsCode {
    RsCode::new(EvalSet::prefix(gf(p), n).unwrap(), d).unwrap()
}

fn rm(p: u64, s: &[u64], m: usize, d: usize) -> CodeParams {
    CodeParams::new(EvalSet::new(gf(p), s).unwrap(), m, d).unwrap()
}

fn ws(sig: &[u64], u: &[(i128, i128)]) -> Vec<WeightedSymbol> {
    sig.iter().zip(u).map(|(&s, &(a, b))| WeightedSymbol { sigma: Fe::new(s), u: Uncertainty::from_ratio(a, b).unwrap() }).collect()
}

fn q(a: i128, b: i128) -> Rational {
    Rational::new(a, b).unwrap()
}

#[test]
fn poly_eval_examples() {
    assert_eq!(poly_eval(&uni(5, &[1, 2]), Fe::new(3)).unwrap(), Fe::new(2));
    assert_eq!(poly_eval(&UniPoly::zero(gf(5)), Fe::new(4)).unwrap(), Fe::new(0));
    assert_eq!(poly_eval(&uni(7, &[0, 0, 1]), Fe::new(3)).unwrap(), Fe::new(2));
    assert!(poly_eval(&uni(5, &[1]), Fe::new(5)).is_err());
}

#[test]
fn interpolate_examples() {
    let f = gf(5);
    let two = [(Fe::new(0), Fe::new(1)), (Fe::new(1), Fe::new(3))];
    assert_eq!(interpolate(&f, &two, 1).unwrap(), Some(uni(5, &[1, 2])));
    let zeros = [(Fe::new(0), Fe::new(0)), (Fe::new(1), Fe::new(0)), (Fe::new(2), Fe::new(0))];
    assert_eq!(interpolate(&f, &zeros, 0).unwrap(), Some(UniPoly::zero(f)));
    // these four points all lie on 2Y + 1
    let four = [(Fe::new(0), Fe::new(1)), (Fe::new(1), Fe::new(3)), (Fe::new(2), Fe::new(0)), (Fe::new(3), Fe::new(2))];
    assert_eq!(interpolate(&f, &four, 1).unwrap(), Some(uni(5, &[1, 2])));
    let bent = [(Fe::new(0), Fe::new(1)), (Fe::new(1), Fe::new(3)), (Fe::new(2), Fe::new(0)), (Fe::new(3), Fe::new(3))];
    assert_eq!(interpolate(&f, &bent, 1).unwrap(), None);
    let full = interpolate(&f, &bent, 3).unwrap().unwrap();
    assert!(full.degree().unwrap() >= 2);
    for &(x, y) in &bent {
        assert_eq!(full.eval(x).unwrap(), y);
    }
    assert!(interpolate(&f, &[(Fe::new(1), Fe::new(0)), (Fe::new(1), Fe::new(2))], 1).is_err());
    assert!(interpolate(&f, &[], 1).is_err());
}

#[test]
fn grid_evaluation_examples() {
    let s3 = EvalSet::prefix(gf(3), 3).unwrap();
    let xy = mp(3, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
    assert_eq!(xy.eval_grid(&s3).unwrap(), fes(&[0, 1, 2, 1, 2, 0, 2, 0, 1]));
    assert_eq!(MultiPoly::zero(gf(3), 2, 1).eval_grid(&s3).unwrap(), fes(&[0; 9]));
    let s5 = EvalSet::prefix(gf(5), 5).unwrap();
    let prod = mp(5, 2, 2, &[(&[1, 1], 1)]);
    assert_eq!(prod.eval_grid(&s5).unwrap().iter().filter(|v| v.is_zero()).count(), 9);
}

#[test]
fn peel_examples() {
    let p = mp(5, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
    let parts = peel_coefficients(&p, 1).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0], mp(5, 1, 0, &[(&[0], 1)]));
    assert_eq!(parts[1], mp(5, 1, 1, &[(&[1], 1)]));

    let c = mp(5, 2, 2, &[(&[0, 0], 3)]);
    let parts = peel_coefficients(&c, 2).unwrap();
    assert!(parts[0].is_zero() && parts[1].is_zero());
    assert_eq!(parts[2], mp(5, 1, 2, &[(&[0], 3)]));

    let p = mp(5, 2, 2, &[(&[2, 0], 1), (&[1, 1], 1)]);
    let parts = peel_coefficients(&p, 2).unwrap();
    assert!(parts[0].is_zero());
    assert_eq!(parts[1], mp(5, 1, 1, &[(&[1], 1)]));
    assert_eq!(parts[2], mp(5, 1, 2, &[(&[2], 1)]));
}

#[test]
fn distance_examples() {
    let f = gf(5);
    let sym = WeightedSymbol { sigma: Fe::new(2), u: Uncertainty::from_ratio(1, 2).unwrap() };
    assert_eq!(wdist_symbol(&sym, Fe::new(2)), q(1, 4));
    assert_eq!(wdist_symbol(&sym, Fe::new(3)), q(3, 4));
    let sure = WeightedSymbol::certain(Fe::new(2));
    assert_eq!(wdist_symbol(&sure, Fe::new(2)), Rational::ZERO);
    assert_eq!(wdist_symbol(&sure, Fe::new(3)), Rational::ONE);

    let r = WeightedGridWord::new(f, 5, 1, ws(&[2, 2, 2, 3, 3], &[(0, 1), (0, 1), (0, 1), (1, 1), (1, 1)])).unwrap();
    let two = GridWord::new(f, 5, 1, fes(&[2; 5])).unwrap();
    assert_eq!(wdist(&r, &two).unwrap(), Rational::ONE);

    let plain = GridWord::new(f, 5, 1, fes(&[0, 1, 2, 3, 4])).unwrap();
    let three_off = GridWord::new(f, 5, 1, fes(&[1, 2, 3, 3, 4])).unwrap();
    assert_eq!(wdist(&plain.to_weighted(), &three_off).unwrap(), Rational::from_int(3));
    let mut erased = plain.to_weighted();
    for s in erased.symbols_mut() {
        s.u = Uncertainty::new(Rational::ONE).unwrap();
    }
    assert_eq!(wdist(&erased, &three_off).unwrap(), q(5, 2));

    assert_eq!(hdist(&plain, &plain).unwrap(), 0);
    let a = GridWord::new(f, 3, 2, fes(&[0; 9])).unwrap();
    let b = GridWord::new(f, 3, 2, fes(&[1; 9])).unwrap();
    assert_eq!(hdist(&a, &b).unwrap(), 9);
    let c = rm(5, &[0, 1, 2, 3, 4], 2, 1);
    let x_y = rm_encode(&mp(5, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]), &c).unwrap();
    let x_2y = rm_encode(&mp(5, 2, 1, &[(&[1, 0], 1), (&[0, 1], 2)]), &c).unwrap();
    assert_eq!(hdist(&x_y, &x_2y).unwrap(), 20);
}

#[test]
fn rs_encode_examples() {
    let c = rs(5, 5, 1);
    assert_eq!(rs_encode(&c, &uni(5, &[1, 2])).unwrap(), fes(&[1, 3, 0, 2, 4]));
    assert_eq!(rs_encode(&c, &UniPoly::zero(gf(5))).unwrap(), fes(&[0; 5]));
    let c7 = rs(7, 7, 2);
    assert_eq!(rs_encode(&c7, &uni(7, &[1, 0, 1])).unwrap(), fes(&[1, 2, 5, 3, 3, 5, 2]));
}

#[test]
fn rs_unique_examples() {
    let c = rs(5, 5, 1);
    let out = rs_unique_decode(&c, &fes(&[1, 3, 0, 2, 0])).unwrap();
    assert_eq!(out, Decoded::Unique { poly: uni(5, &[1, 2]), dist: Rational::ONE });
    let exact = rs_unique_decode(&c, &fes(&[1, 3, 0, 2, 4])).unwrap();
    assert_eq!(exact, Decoded::Unique { poly: uni(5, &[1, 2]), dist: Rational::ZERO });
    let c0 = rs(5, 5, 0);
    let out = rs_unique_decode(&c0, &fes(&[0, 1, 0, 1, 0])).unwrap();
    assert_eq!(out, Decoded::Unique { poly: UniPoly::zero(gf(5)), dist: Rational::from_int(2) });
}

#[test]
fn rs_erasure_examples() {
    let c = rs(5, 5, 1);
    let word = fes(&[1, 3, 0, 2, 4]);
    let erased = [false, false, true, false, true];
    assert_eq!(rs_ee_decode(&c, &word, &erased).unwrap().poly(), Some(&uni(5, &[1, 2])));
    assert!(!rs_ee_decode(&c, &word, &[true; 5]).unwrap().is_unique());
    let one_err = fes(&[1, 3, 0, 2, 0]);
    assert_eq!(rs_ee_decode(&c, &one_err, &[false; 5]).unwrap(), rs_unique_decode(&c, &one_err).unwrap());
}

#[test]
fn rs_gmd_examples() {
    let c = rs(5, 5, 0);
    let w = ws(&[2, 2, 2, 3, 3], &[(0, 1), (0, 1), (0, 1), (1, 1), (1, 1)]);
    let out = rs_gmd_decode(&c, &w, q(5, 2)).unwrap();
    assert_eq!(out, Decoded::Unique { poly: uni(5, &[2]), dist: Rational::ONE });
    let all = ws(&[2, 2, 2, 3, 3], &[(1, 1); 5]);
    assert!(!rs_gmd_decode(&c, &all, q(5, 2)).unwrap().is_unique());
}

#[test]
fn rs_fast_examples() {
    let c = rs(101, 32, 8);
    let cw = rs_encode(&c, &uni(101, &[5, 1, 0, 7])).unwrap();
    let sure: Vec<WeightedSymbol> = cw.iter().map(|&v| WeightedSymbol::certain(v)).collect();
    // radius (n - d - sqrt n) / 2 = (32 - 8 - 6) / 2
    let radius = Rational::from_int(9);
    let mut rng = SeededRng::new(3);
    let out = rs_fast_soft_decode(&c, &sure, radius, &mut rng, Some(1)).unwrap();
    assert_eq!(out.poly(), Some(&uni(101, &[5, 1, 0, 7])));
    let blind: Vec<WeightedSymbol> = cw.iter().map(|_| WeightedSymbol::erased()).collect();
    assert!(!rs_fast_soft_decode(&c, &blind, radius, &mut rng, None).unwrap().is_unique());
}

#[test]
fn rs_list_examples() {
    let c = rs(5, 5, 1);
    let list = rs_list_decode(&c, &fes(&[1, 3, 0, 2, 0]), Rational::from_int(2)).unwrap();
    assert_eq!(list, vec![(uni(5, &[1, 2]), 1)]);
    let c7 = rs(7, 7, 1);
    let cw = rs_encode(&c7, &uni(7, &[3, 4])).unwrap();
    assert_eq!(rs_list_decode(&c7, &cw, Rational::ONE).unwrap(), vec![(uni(7, &[3, 4]), 0)]);
}

#[test]
fn rm_encode_examples() {
    let c = rm(3, &[0, 1, 2], 2, 1);
    let p = mp(3, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
    assert_eq!(rm_encode(&p, &c).unwrap().values(), fes(&[0, 1, 2, 1, 2, 0, 2, 0, 1]).as_slice());
    let c = rm(5, &[0, 1], 3, 0);
    assert_eq!(rm_encode(&mp(5, 3, 0, &[(&[0, 0, 0], 4)]), &c).unwrap().values(), fes(&[4; 8]).as_slice());
    // X1 X2 + X3 needs d = 2 on a two-point set; evaluated directly instead
    let s = EvalSet::new(gf(5), &[0, 1]).unwrap();
    let p = mp(5, 3, 2, &[(&[1, 1, 0], 1), (&[0, 0, 1], 1)]);
    assert_eq!(p.eval_grid(&s).unwrap(), fes(&[0, 1, 0, 1, 0, 1, 1, 2]));
    assert!(CodeParams::new(s, 3, 2).is_err());
}

#[test]
fn bivariate_examples() {
    let c = rm(5, &[0, 1, 2, 3], 2, 1);
    let p = mp(5, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
    let sent = rm_encode(&p, &c).unwrap();
    assert_eq!(decode_bivariate(&sent, &c).unwrap(), Decoded::Unique { poly: p.clone(), dist: Rational::ZERO });
    let mut r = sent.clone();
    for i in [0, 3, 6, 9, 15] {
        r.values_mut()[i] = Fe::new((r.values()[i].value() + 1) % 5);
    }
    assert_eq!(oracle_nearest(&c, &r).unwrap().poly, p);
    assert_eq!(decode_bivariate(&r, &c).unwrap(), Decoded::Unique { poly: p, dist: Rational::from_int(5) });
}

#[test]
fn bivariate_boundary_never_unverified() {
    // constant code on {0..3}^2: a half-zero half-one word is at distance 8 from both
    let c = rm(5, &[0, 1, 2, 3], 2, 0);
    let f = gf(5);
    let r = GridWord::new(f, 4, 2, (0..16).map(|i| Fe::new((i / 8) as u64)).collect()).unwrap();
    match decode_bivariate(&r, &c).unwrap() {
        Decoded::Unique { poly, dist } => {
            assert!(dist < c.half_distance());
            assert_eq!(Rational::from(hdist(&rm_encode(&poly, &c).unwrap(), &r).unwrap()), dist);
        }
        Decoded::Failure(_) => {}
    }
}

#[test]
fn soft_recursive_examples() {
    let c = rm(7, &[0, 1, 2, 3, 4, 5, 6], 3, 2);
    let f = gf(7);
    for seed in 0..100 {
        let mut rng = SeededRng::new(seed);
        let p = harness::random_poly(&f, 3, 2, &mut rng);
        let sent = rm_encode(&p, &c).unwrap();
        let r = harness::corrupt(&sent, &ChannelSpec::RandomErrors { weight: 122 }, &mut rng).unwrap();
        assert_eq!(decode_soft_recursive(&r.to_weighted(), &c).unwrap().poly(), Some(&p), "seed {seed}");
    }
    let blind = WeightedGridWord::new(f, 7, 3, vec![WeightedSymbol::erased(); 343]).unwrap();
    assert!(!decode_soft_recursive(&blind, &c).unwrap().is_unique());
}

#[test]
fn soft_recursive_matches_gmd_in_one_variable() {
    let c = rm(7, &[0, 1, 2, 3, 4, 5, 6], 1, 2);
    let r = rs(7, 7, 2);
    for seed in 0..1000 {
        let mut rng = SeededRng::new(seed);
        let syms: Vec<WeightedSymbol> = (0..7)
            .map(|_| WeightedSymbol { sigma: Fe::new(rng.below(7)), u: Uncertainty::from_ratio(rng.below(5) as i128, 4).unwrap() })
            .collect();
        let w = WeightedGridWord::new(gf(7), 7, 1, syms.clone()).unwrap();
        let a = decode_soft_recursive(&w, &c).unwrap();
        let b = rs_gmd_decode(&r, &syms, r.half_distance()).unwrap();
        assert_eq!(a.poly().map(|p| p.to_univariate().unwrap()), b.poly().cloned(), "seed {seed}");
    }
}

#[test]
fn fast_bivariate_examples() {
    let c = CodeParams::new(EvalSet::prefix(gf(101), 64).unwrap(), 2, 32).unwrap();
    let fp = FastParams::default();
    let p = harness::random_poly(c.field(), 2, 32, &mut SeededRng::new(9));
    let sent = rm_encode(&p, &c).unwrap();
    for seed in 0..3 {
        let out = decode_bivariate_fast(&sent, &c, &fp, &SeededRng::new(seed)).unwrap();
        assert_eq!(out, Decoded::Unique { poly: p.clone(), dist: Rational::ZERO });
    }
    // list decodes: n per epoch
    let mut probe = Probe::new();
    rm::decode_bivariate_fast_probed(&sent, &c, &fp, &SeededRng::new(0), &mut probe).unwrap();
    let (ell, epochs) = rm::list_epochs(64, 32).unwrap();
    assert_eq!(epochs, 33usize.div_ceil(ell));
    assert_eq!(probe.stats.level(0).row_list_decodes, 64 * epochs as u64);
}

#[test]
fn fast_agrees_with_bivariate() {
    let c = CodeParams::new(EvalSet::prefix(gf(101), 64).unwrap(), 2, 32).unwrap();
    let fp = FastParams::default();
    let half = c.half_distance();
    for t in 0..200u64 {
        let mut rng = SeededRng::new(1000 + t);
        let weight = rng.below(fp.fast_radius(&c).ceil() as u64) as usize;
        let p = harness::random_poly(c.field(), 2, 32, &mut rng);
        let r = harness::corrupt(&rm_encode(&p, &c).unwrap(), &ChannelSpec::RandomErrors { weight }, &mut rng).unwrap();
        let slow = decode_bivariate(&r, &c).unwrap();
        let fast = decode_bivariate_fast(&r, &c, &fp, &rng.split(7)).unwrap();
        if Rational::from(weight) < half {
            assert_eq!(fast, slow, "trial {t}");
        }
        if let Decoded::Unique { dist, .. } = &fast {
            assert!(*dist < fp.fast_radius(&c));
        }
    }
}

#[test]
fn soft_fast_examples() {
    let c = CodeParams::new(EvalSet::prefix(gf(101), 64).unwrap(), 2, 16).unwrap();
    let fp = FastParams::default();
    let radius = fp.soft_radius(&c, 4);
    for seed in 0..50 {
        let mut rng = SeededRng::new(seed);
        let p = harness::random_poly(c.field(), 2, 16, &mut rng);
        let weight = (radius.ceil() - 1) as usize;
        let r = harness::corrupt(&rm_encode(&p, &c).unwrap(), &ChannelSpec::RandomErrors { weight }, &mut rng).unwrap();
        let out = decode_soft_fast(&r.to_weighted(), &c, &fp, radius, &rng.split(5)).unwrap();
        assert_eq!(out.poly(), Some(&p), "seed {seed}");
    }
    // e at its largest value
    let s = fp.sqrt_loss(64);
    let e = 64 - 16 - 2 * s - 1;
    let p = harness::random_poly(c.field(), 2, 16, &mut SeededRng::new(1));
    let w = rm_encode(&p, &c).unwrap().to_weighted();
    let mut probe = Probe::new();
    let out = rm::decode_soft_fast_probed(&w, &c, &fp, fp.soft_radius(&c, e), &SeededRng::new(2), &mut probe).unwrap();
    assert!(out.is_unique());
    assert_eq!(probe.stats.level(0).row_soft_decodes, (17usize.div_ceil(e + 1) * 64) as u64);
    let too_big = fp.soft_radius(&c, 0) + Rational::ONE;
    assert!(matches!(decode_soft_fast(&w, &c, &fp, too_big, &SeededRng::new(0)), Err(Error::Precondition(_))));
}

#[test]
fn fast_dispatch_examples() {
    let c2 = CodeParams::new(EvalSet::prefix(gf(101), 32).unwrap(), 2, 8).unwrap();
    let fp = FastParams::default();
    let mut rng = SeededRng::new(4);
    let p = harness::random_poly(c2.field(), 2, 8, &mut rng);
    let r = harness::corrupt(&rm_encode(&p, &c2).unwrap(), &ChannelSpec::RandomErrors { weight: 200 }, &mut rng).unwrap();
    for seed in 0..5 {
        let g = SeededRng::new(seed);
        assert_eq!(decode_fast(&r, &c2, &fp, &g).unwrap(), decode_bivariate_fast(&r, &c2, &fp, &g).unwrap());
    }

    let c3 = CodeParams::new(EvalSet::prefix(gf(101), 32).unwrap(), 3, 8).unwrap();
    let radius = fp.fast_radius(&c3);
    let mut ok = 0;
    for seed in 0..50 {
        let mut rng = SeededRng::new(100 + seed);
        let p = harness::random_poly(c3.field(), 3, 8, &mut rng);
        let weight = (radius.ceil() - 1) as usize;
        let r = harness::corrupt(&rm_encode(&p, &c3).unwrap(), &ChannelSpec::RandomErrors { weight }, &mut rng).unwrap();
        match decode_fast(&r, &c3, &fp, &rng.split(9)).unwrap() {
            Decoded::Unique { poly, dist } => {
                assert!(dist < radius);
                ok += usize::from(poly == p);
            }
            Decoded::Failure(_) => {}
        }
    }
    assert!(ok >= 49, "{ok}/50");
}

#[test]
fn oracle_and_schwartz_zippel_examples() {
    let c = rm(5, &[0, 1, 2, 3, 4], 1, 1);
    let cw = rm_encode(&mp(5, 1, 1, &[(&[1], 2), (&[0], 1)]), &c).unwrap();
    let o = oracle_nearest(&c, &cw).unwrap();
    assert_eq!((o.dist, o.ambiguous), (Rational::ZERO, false));

    let c2 = rm(5, &[0, 1, 2, 3, 4], 2, 2);
    let p = mp(5, 2, 2, &[(&[1, 1], 1)]);
    let shifted = mp(5, 2, 2, &[(&[1, 1], 1), (&[0, 0], 3)]);
    assert!(schwartz_zippel_check(&p, &MultiPoly::zero(gf(5), 2, 2), &c2).unwrap());
    assert!(schwartz_zippel_check(&p, &shifted, &c2).unwrap());
    assert_eq!(hdist(&rm_encode(&p, &c2).unwrap(), &rm_encode(&shifted, &c2).unwrap()).unwrap(), 25);
}

#[test]
fn success_rate_examples() {
    let c = CodeParams::new(EvalSet::prefix(gf(101), 16).unwrap(), 2, 4).unwrap();
    let clean = Experiment {
        decoder: DecoderId::Bivariate,
        code: c.clone(),
        channel: ChannelSpec::RandomErrors { weight: 0 },
        request: DecodeRequest::default(),
        trials: 100,
        seed: 1,
        timed: false,
    };
    assert_eq!(success_rate_experiment(&clean).unwrap().success_rate(), Rational::ONE);
    // far past the radius: failures are fine, wrong answers are not
    let hopeless = Experiment { channel: ChannelSpec::RandomErrors { weight: 200 }, ..clean.clone() };
    let res = success_rate_experiment(&hopeless).unwrap();
    assert_eq!(res.wrong, 0);
    assert!(success_rate_experiment(&Experiment { trials: 99, ..clean }).is_err());
}

#[test]
fn bivariate_call_counts() {
    let c = CodeParams::new(EvalSet::prefix(gf(17), 16).unwrap(), 2, 8).unwrap();
    let p = harness::random_poly(c.field(), 2, 8, &mut SeededRng::new(0));
    let mut probe = Probe::new();
    assert!(rm::decode_bivariate_probed(&rm_encode(&p, &c).unwrap(), &c, &mut probe).unwrap().is_unique());
    // (d + 1) n
    assert_eq!(probe.stats.level(0).row_unique_decodes, 9 * 16);
    assert_eq!(probe.stats.level(0).coeff_decodes, 9);
}
