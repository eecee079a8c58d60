//! The twelve acceptance checks. Run with `cargo test --test acceptance`;
//! prints one PASS/FAIL line per check and exits non-zero on any failure.

use std::time::{Duration, Instant};

use sphereq::cayley::{saturation_length, FiniteGroup};
use sphereq::dihedral::{decide_dn, reduce_partition, solve_dn, PartitionInstance};
use sphereq::dispatch::decide;
use sphereq::group::{CayleyTable, GroupElement, GroupSpec};
use sphereq::highdim::{solve_heisenberg, solve_ut4, HeisenbergElement, Ut4Element};
use sphereq::mat2::{classify, decide_gl2, decide_tl2, solve_gl2, solve_tl2, trace_target, Mat2, MatTag};
use sphereq::numtheory::{
    legendre, solve_bivariate, solve_weighted_trace, sqrt_mod, Legendre, PrimeField, Residue, Rng,
};
use sphereq::perm::characters::decide_by_characters;
use sphereq::perm::{certificate_to_solution, reduce_3partition, reduce_3partition_an, ThreePartition};
use sphereq::semidirect::{self, decide_signvector, reduce_xcover, XCoverInstance};
use sphereq::{verify, SphericalEquation};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

/// All `k`-tuples over `0..n`.
fn tuples(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

fn equation(fg: &FiniteGroup, idx: &[u32]) -> SphericalEquation {
    let cs = idx.iter().map(|&i| fg.element(i).clone()).collect();
    SphericalEquation::new(fg.spec().clone(), cs, None).unwrap()
}

fn quaternion_table() -> CayleyTable {
    // index 2u + s: unit u ∈ {1, i, j, k}, sign s (0 = +)
    let unit = |a: usize, b: usize| -> (usize, usize) {
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        T[a][b]
    };
    let rows = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, s) = unit(x / 2, y / 2);
                    2 * u + (s + x % 2 + y % 2) % 2
                })
                .collect()
        })
        .collect();
    CayleyTable::new(rows).unwrap()
}

fn c1_fixed_groups() -> Check {
    let start = Instant::now();
    let groups = vec![
        ("S3", GroupSpec::Symmetric { n: 3 }),
        ("S4", GroupSpec::Symmetric { n: 4 }),
        ("D4", GroupSpec::Dihedral { n: 4 }),
        ("D6", GroupSpec::Dihedral { n: 6 }),
        ("Z6", GroupSpec::Cayley(CayleyTable::cyclic(6).unwrap())),
        ("Q8", GroupSpec::Cayley(quaternion_table())),
    ];
    let mut total = 0;
    for (name, spec) in groups {
        let fg = FiniteGroup::new(&spec).map_err(|e| e.to_string())?;
        for k in 0..=3 {
            for t in tuples(fg.order() as u32, k) {
                let dp = fg.decide_indices(&t);
                let brute = fg.solve_brute_indices(&t).map_err(|e| e.to_string())?.is_some();
                ensure(dp == brute, || format!("{name}: mismatch on {t:?}"))?;
                total += 1;
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{total} equations, 0 mismatches"))
}

fn c2_dihedral() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for n in 3..=8u64 {
        let fg = FiniteGroup::new(&GroupSpec::Dihedral { n }).unwrap();
        for k in 1..=3 {
            for t in tuples(fg.order() as u32, k) {
                let eq = equation(&fg, &t);
                let expect = fg.solve_brute_indices(&t).unwrap().is_some();
                let got = decide_dn(&eq).map_err(|e| e.to_string())?;
                ensure(got == expect, || format!("D_{n}: verdict mismatch on {t:?}"))?;
                let sol = solve_dn(&eq).map_err(|e| e.to_string())?;
                ensure(sol.is_some() == expect, || format!("D_{n}: solve_dn disagrees on {t:?}"))?;
                if let Some(s) = sol {
                    ensure(verify(&eq, &s).unwrap(), || format!("D_{n}: solution fails on {t:?}"))?;
                }
                total += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{total} equations over D_3..D_8"))
}

fn multisets(k: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in multisets(k - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn c3_partition() -> Check {
    let (mut total, mut positive) = (0, 0);
    for k in 1..=8 {
        for a in multisets(k, 1, 6) {
            let inst = PartitionInstance::new(a.clone());
            let eq = reduce_partition(&inst).map_err(|e| e.to_string())?;
            let v = decide(&eq, false).map_err(|e| e.to_string())?;
            ensure(v.method == "dihedral-criteria", || format!("routed to {}", v.method))?;
            ensure(v.solvable == inst.brute_force(), || format!("mismatch on {a:?}"))?;
            if v.solvable {
                let sol = solve_dn(&eq).unwrap().ok_or_else(|| format!("no solution for {a:?}"))?;
                ensure(verify(&eq, &sol).unwrap(), || format!("solution fails for {a:?}"))?;
                positive += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} instances ({positive} positive), 0 mismatches"))
}

fn c4_three_partition() -> Check {
    let mut count = 0;
    for l in 1..=12u64 {
        for a in multisets(3, 1, l) {
            let inst = ThreePartition::new(a.clone());
            if a.iter().sum::<u64>() != l || inst.parameters().is_err() {
                continue;
            }
            let expect = inst.brute_force().unwrap();
            let eq = reduce_3partition(&inst).unwrap();
            let verdict = decide_by_characters(&eq).map_err(|e| e.to_string())?;
            ensure(verdict == expect.is_some(), || format!("S_n verdict mismatch on {a:?}"))?;
            if eq.group().is_enumerable() {
                let brute = sphereq::cayley::solve_brute(&eq).unwrap().is_some();
                ensure(brute == verdict, || format!("character oracle disagrees with brute on {a:?}"))?;
            }
            let eq_an = reduce_3partition_an(&inst).unwrap();
            let verdict_an = decide_by_characters(&eq_an).map_err(|e| e.to_string())?;
            ensure(verdict_an == expect.is_some(), || format!("A_n verdict mismatch on {a:?}"))?;
            if let Some(cert) = expect {
                let sol = certificate_to_solution(&inst, &cert, false).map_err(|e| e.to_string())?;
                ensure(verify(&eq, &sol).unwrap(), || format!("S_n certificate fails on {a:?}"))?;
                let sol = certificate_to_solution(&inst, &cert, true).map_err(|e| e.to_string())?;
                ensure(verify(&eq_an, &sol).unwrap(), || format!("A_n certificate fails on {a:?}"))?;
                let even = sol.conjugators.iter().all(|z| z.as_perm().unwrap().sign() == 1);
                ensure(even, || format!("odd conjugator in A_n certificate for {a:?}"))?;
            }
            count += 1;
        }
    }
    ensure(count > 0, || "no instances".into())?;
    Ok(format!("{count} instances with k = 1, S_n and A_n"))
}

fn random_gl2(p: u64, rng: &mut Rng) -> Mat2 {
    Mat2::random_invertible(p, rng)
}

fn planted(spec: &GroupSpec, cs: Vec<GroupElement>, rng_z: impl FnMut() -> GroupElement) -> SphericalEquation {
    let mut rng_z = rng_z;
    let mut prod = spec.identity();
    for c in &cs {
        prod = spec.mul(&prod, &spec.conj(c, &rng_z()));
    }
    let mut all = cs;
    all.push(spec.inv(&prod));
    SphericalEquation::new(spec.clone(), all, None).unwrap()
}

fn c5_gl2() -> Check {
    let start = Instant::now();
    let spec = GroupSpec::Gl2 { p: 3 };
    let fg = FiniteGroup::new(&spec).unwrap();
    let mut exhaustive = 0;
    for k in 1..=3 {
        for t in tuples(fg.order() as u32, k) {
            let eq = equation(&fg, &t);
            let expect = fg.solve_brute_indices(&t).unwrap().is_some();
            ensure(decide_gl2(&eq).unwrap() == expect, || format!("GL(2,3) mismatch on {t:?}"))?;
            exhaustive += 1;
        }
    }
    within(start, Duration::from_secs(300))?;

    let mut rng = Rng::new(2024);
    let spec5 = GroupSpec::Gl2 { p: 5 };
    let fg5 = FiniteGroup::new(&spec5).unwrap();
    let mut solvable5 = 0;
    for _ in 0..1000 {
        let t: Vec<u32> = (0..3).map(|_| rng.below(fg5.order() as u64) as u32).collect();
        let eq = equation(&fg5, &t);
        let expect = fg5.solve_brute_indices(&t).unwrap().is_some();
        ensure(decide_gl2(&eq).unwrap() == expect, || format!("GL(2,5) mismatch on {t:?}"))?;
        solvable5 += expect as usize;
    }

    for p in [5u64, 7, 101, 1009] {
        let start = Instant::now();
        let spec = GroupSpec::Gl2 { p };
        for i in 0..1000 {
            let k = 2 + i % 7;
            let cs: Vec<GroupElement> = (0..k - 1).map(|_| GroupElement::Matrix(random_gl2(p, &mut rng))).collect();
            let mut zr = Rng::new(i as u64);
            let eq = planted(&spec, cs, || GroupElement::Matrix(random_gl2(p, &mut zr)));
            let sol = solve_gl2(&eq, &mut rng).map_err(|e| format!("p = {p}: {e}"))?;
            let sol = sol.ok_or_else(|| format!("p = {p}: planted instance reported unsolvable"))?;
            ensure(verify(&eq, &sol).unwrap(), || format!("p = {p}: solution fails"))?;
        }
        within(start, Duration::from_secs(60))?;
    }
    Ok(format!(
        "GL(2,3): {exhaustive} tuples; GL(2,5): 1000 triples ({solvable5} solvable); 4000 planted solves verified"
    ))
}

fn c6_tl2() -> Check {
    let mut total = 0;
    for p in [3u64, 5] {
        let fg = FiniteGroup::new(&GroupSpec::Tl2 { p }).unwrap();
        for k in 1..=3 {
            for t in tuples(fg.order() as u32, k) {
                let eq = equation(&fg, &t);
                let expect = fg.solve_brute_indices(&t).unwrap().is_some();
                ensure(decide_tl2(&eq).unwrap() == expect, || format!("TL(2,{p}) mismatch on {t:?}"))?;
                let sol = solve_tl2(&eq).map_err(|e| e.to_string())?;
                ensure(sol.is_some() == expect, || format!("TL(2,{p}) solve disagrees on {t:?}"))?;
                if let Some(s) = sol {
                    ensure(verify(&eq, &s).unwrap(), || format!("TL(2,{p}) solution fails on {t:?}"))?;
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} equations over TL(2,3) and TL(2,5)"))
}

fn trace_set(a: &Mat2, b: &Mat2, zs: &[Mat2]) -> Vec<bool> {
    let mut hit = vec![false; a.modulus() as usize];
    for z in zs {
        hit[a.mul(&b.conj(z)).trace() as usize] = true;
    }
    hit
}

fn c7_trace_sets() -> Check {
    let start = Instant::now();
    let p = 7u64;
    let f = PrimeField::new(p).unwrap();
    let mut zs = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = Mat2::new(p, a, b, c, d);
                    if m.is_invertible() {
                        zs.push(m);
                    }
                }
            }
        }
    }
    ensure(zs.len() == 2016, || format!("|GL(2,7)| = {}", zs.len()))?;
    let mut rng = Rng::new(77);
    let pick = |want: &[MatTag], rng: &mut Rng| loop {
        let m = random_gl2(p, rng);
        if want.contains(&classify(&m).unwrap().tag) {
            return m;
        }
    };
    let check_target = |a: &Mat2, b: &Mat2, hit: &[bool], rng: &mut Rng| -> std::result::Result<(), String> {
        for k in 0..p {
            let z = trace_target(a, b, k, rng).map_err(|e| e.to_string())?;
            ensure(z.is_some() == hit[k as usize], || format!("trace_target({a:?}, {b:?}, {k}) disagrees"))?;
            if let Some(z) = z {
                ensure(a.mul(&b.conj(&z)).trace() == k, || "wrong trace".into())?;
            }
        }
        Ok(())
    };
    for _ in 0..100 {
        let b = pick(&[MatTag::Type1, MatTag::Type2], &mut rng);
        let a = pick(&[MatTag::Type1, MatTag::Type2], &mut rng);
        let hit = trace_set(&a, &b, &zs);
        ensure(hit.iter().all(|&h| h), || format!("T({a:?}, {b:?}) ≠ ℤ_7"))?;
        check_target(&a, &b, &hit, &mut rng)?;
    }
    let mut excluded = 0;
    for _ in 0..100 {
        let b = pick(&[MatTag::Type3], &mut rng);
        let a = pick(&[MatTag::Type1, MatTag::Type2, MatTag::Type3], &mut rng);
        let s = classify(&b).unwrap().s();
        let point = f.mul(s, a.trace());
        let amd = f.sub(a.a, a.d);
        let disc = f.add(f.mul(amd, amd), f.mul(4, f.mul(a.b, a.c)));
        let nonres = f.legendre(disc) == Legendre::NonResidue;
        let hit = trace_set(&a, &b, &zs);
        for k in 0..p {
            let expect = !(nonres && k == point);
            ensure(hit[k as usize] == expect, || format!("T({a:?}, {b:?}) at {k}: got {}", hit[k as usize]))?;
        }
        excluded += nonres as usize;
        check_target(&a, &b, &hit, &mut rng)?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("200 pairings; {excluded} type-3 cases with the excluded point"))
}

fn heis_random(n: usize, p: u64, rng: &mut Rng) -> HeisenbergElement {
    let v = |rng: &mut Rng| (0..n - 2).map(|_| rng.below(p)).collect::<Vec<_>>();
    let a1 = v(rng);
    let a3 = v(rng);
    HeisenbergElement::new(p, a1, rng.below(p), a3)
}

fn c8_heisenberg() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for p in [2u64, 3] {
        let fg = FiniteGroup::new(&GroupSpec::Heisenberg { n: 3, p }).unwrap();
        for k in 1..=3 {
            for t in tuples(fg.order() as u32, k) {
                let eq = equation(&fg, &t);
                let expect = fg.solve_brute_indices(&t).unwrap().is_some();
                let sol = solve_heisenberg(&eq).map_err(|e| e.to_string())?;
                ensure(sol.is_some() == expect, || format!("H_3({p}) mismatch on {t:?}"))?;
                if let Some(s) = sol {
                    ensure(verify(&eq, &s).unwrap(), || "solution fails".into())?;
                }
                total += 1;
            }
        }
    }
    let mut rng = Rng::new(8);
    let (mut solved, mut rejected) = (0, 0);
    for (n, p) in [(5usize, 101u64), (8, 1009)] {
        let spec = GroupSpec::Heisenberg { n, p };
        for i in 0..1000 {
            let k = 1 + rng.below(6) as usize;
            let mut cs: Vec<HeisenbergElement> = (0..k).map(|_| heis_random(n, p, &mut rng)).collect();
            if i % 2 == 0 {
                // make both vector sums vanish
                let last = cs.len() - 1;
                for j in 0..n - 2 {
                    let s1: u64 = cs[..last].iter().map(|c| c.alpha1()[j]).sum::<u64>() % p;
                    let s3: u64 = cs[..last].iter().map(|c| c.alpha3()[j]).sum::<u64>() % p;
                    let mut a1 = cs[last].alpha1().to_vec();
                    let mut a3 = cs[last].alpha3().to_vec();
                    a1[j] = (p - s1) % p;
                    a3[j] = (p - s3) % p;
                    cs[last] = HeisenbergElement::new(p, a1, cs[last].a2(), a3);
                }
            }
            let els: Vec<GroupElement> = cs.iter().cloned().map(GroupElement::Heisenberg).collect();
            let eq = SphericalEquation::new(spec.clone(), els, None).unwrap();
            match solve_heisenberg(&eq).map_err(|e| e.to_string())? {
                Some(s) => {
                    ensure(verify(&eq, &s).unwrap(), || "random solution fails".into())?;
                    solved += 1;
                }
                None => {
                    let sums_ok = (0..n - 2).all(|j| {
                        cs.iter().map(|c| c.alpha1()[j]).sum::<u64>() % p == 0
                            && cs.iter().map(|c| c.alpha3()[j]).sum::<u64>() % p == 0
                    });
                    let all_zero = cs.iter().all(|c| c.alpha1().iter().chain(c.alpha3()).all(|&v| v == 0));
                    let prod = cs.iter().fold(HeisenbergElement::identity(n, p), |acc, c| acc.mul(c));
                    ensure(!sums_ok || (all_zero && !prod.is_identity()), || "rejected without cause".into())?;
                    rejected += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{total} exhaustive; random: {solved} verified, {rejected} necessary-condition failures"))
}

fn c9_ut4() -> Check {
    let fg = FiniteGroup::new(&GroupSpec::Ut4 { p: 2 }).unwrap();
    let mut total = 0;
    for k in 1..=2 {
        for t in tuples(fg.order() as u32, k) {
            let eq = equation(&fg, &t);
            let expect = fg.solve_brute_indices(&t).unwrap().is_some();
            let sol = solve_ut4(&eq).map_err(|e| e.to_string())?;
            ensure(sol.is_some() == expect, || format!("UT(4,2) mismatch on {t:?}"))?;
            if let Some(s) = sol {
                ensure(verify(&eq, &s).unwrap(), || "solution fails".into())?;
            }
            total += 1;
        }
    }
    let mut rng = Rng::new(9);
    for p in [3u64, 5, 101] {
        let spec = GroupSpec::Ut4 { p };
        for i in 0..1000 {
            let k = 2 + i % 5;
            let r = |rng: &mut Rng| Ut4Element::new(p, [0; 6].map(|_| rng.below(p)));
            let cs: Vec<GroupElement> = (0..k - 1).map(|_| GroupElement::Ut4(r(&mut rng))).collect();
            let mut zr = Rng::new(i as u64 ^ p);
            let eq = planted(&spec, cs, || GroupElement::Ut4(r(&mut zr)));
            let sol = solve_ut4(&eq).map_err(|e| e.to_string())?;
            let sol = sol.ok_or_else(|| format!("UT(4,{p}): planted instance reported unsolvable"))?;
            ensure(verify(&eq, &sol).unwrap(), || format!("UT(4,{p}): solution fails"))?;
        }
    }
    Ok(format!("{total} exhaustive over UT(4,2); 3000 planted solves verified"))
}

fn small_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..1 << k {
        if mask.count_ones() <= 3 {
            out.push((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect());
        }
    }
    out
}

fn c10_semidirect() -> Check {
    let start = Instant::now();
    let (mut total, mut positive) = (0usize, 0usize);
    for k in 1..=6 {
        let subs = small_subsets(k);
        for l in 1..=4 {
            for choice in multisets(l, 0, subs.len() as u64 - 1) {
                let subsets: Vec<Vec<usize>> = choice.iter().map(|&i| subs[i as usize].clone()).collect();
                let mut occ = vec![0; k + 1];
                subsets.iter().flatten().for_each(|&e| occ[e] += 1);
                if occ.iter().any(|&o| o > 3) {
                    continue;
                }
                let inst = XCoverInstance::new(k, subsets);
                let expect = inst.brute_force();
                for m in [3u64, 5] {
                    let eq = reduce_xcover(&inst, m).map_err(|e| e.to_string())?;
                    let got = decide_signvector(&eq).map_err(|e| e.to_string())?;
                    ensure(got == expect.is_some(), || format!("m = {m}: mismatch on {inst:?}"))?;
                    if let Some(cert) = &expect {
                        let sol = semidirect::certificate_to_solution(&inst, cert, m).map_err(|e| e.to_string())?;
                        ensure(verify(&eq, &sol).unwrap(), || format!("certificate fails on {inst:?}"))?;
                        positive += 1;
                    }
                    total += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{total} reduced equations ({positive} positive), 0 mismatches"))
}

fn c11_saturation() -> Check {
    let a5 = GroupSpec::Alternating { n: 5 };
    let l = saturation_length(&a5).map_err(|e| e.to_string())?.ok_or("A5 has no saturation length")?;
    ensure(l <= 60 * 60 * 60 - 60 + 1, || format!("L = {l} exceeds the bound"))?;
    let fg = FiniteGroup::new(&a5).unwrap();
    let mut rng = Rng::new(11);
    for _ in 0..1000 {
        let t: Vec<u32> = (0..l)
            .map(|_| loop {
                let i = rng.below(60) as u32;
                if i != fg.identity() {
                    break i;
                }
            })
            .collect();
        ensure(fg.decide_indices(&t), || format!("length-{l} equation {t:?} unsolvable"))?;
    }
    let z2 = GroupSpec::Cayley(CayleyTable::cyclic(2).unwrap());
    ensure(saturation_length(&z2).unwrap().is_none(), || "Z2 saturates".into())?;
    ensure(saturation_length(&GroupSpec::Symmetric { n: 3 }).unwrap().is_none(), || "S3 saturates".into())?;
    Ok(format!("L(A5) = {l}, 1000 samples solvable; Z2 and S3 give none"))
}

const PRIMES: [u64; 10] = [3, 5, 7, 101, 1009, 65_537, 1_000_000_007, 2_147_483_647, 4_294_967_311, (1 << 61) - 1];

fn nt_run(seed: u64) -> std::result::Result<Vec<u64>, String> {
    let mut rng = Rng::new(seed);
    let mut trace = Vec::new();
    for i in 0..10_000 {
        let p = PRIMES[i % PRIMES.len()];
        let f = PrimeField::new(p).unwrap();
        let c = rng.element(f);
        let euler = f.pow(c, (p - 1) / 2);
        let leg = legendre(Residue::new(f, c));
        let expect = if c == 0 {
            Legendre::Zero
        } else if euler == 1 {
            Legendre::Residue
        } else {
            Legendre::NonResidue
        };
        ensure(leg == expect, || format!("legendre({c}, {p})"))?;
        if leg != Legendre::NonResidue {
            let r = sqrt_mod(Residue::new(f, c), &mut rng).map_err(|e| e.to_string())?.value();
            ensure(f.mul(r, r) == c, || format!("sqrt({c}) mod {p}"))?;
            trace.push(r);
        }
        let k = rng.nonzero(f);
        let m = rng.nonzero(f);
        let (x, y) = solve_bivariate(Residue::new(f, k), Residue::new(f, m), &mut rng).map_err(|e| e.to_string())?;
        let (x, y) = (x.value(), y.value());
        ensure(f.sub(f.mul(x, x), f.mul(k, f.mul(y, y))) == m, || format!("bivariate mod {p}"))?;
        trace.push(x);
        let nr = || loop {
            let v = rng.nonzero(f);
            if f.legendre(v) == Legendre::NonResidue {
                break v;
            }
        };
        let mut nr = nr;
        let t = nr();
        let b = nr();
        let kk = rng.element(f);
        let (u, x) = solve_weighted_trace(Residue::new(f, kk), Residue::new(f, t), Residue::new(f, b), &mut rng)
            .map_err(|e| e.to_string())?;
        let (u, x) = (u.value(), x.value());
        let ui = f.inv(u).ok_or("u = 0")?;
        let lhs = f.add(f.mul(u, b), f.mul(ui, f.sub(t, f.mul(x, x))));
        ensure(lhs == kk, || format!("weighted trace mod {p}"))?;
        trace.push(u);
    }
    Ok(trace)
}

fn c12_number_theory() -> Check {
    let a = nt_run(12)?;
    let b = nt_run(12)?;
    ensure(a == b, || "results differ between runs with the same seed".into())?;
    Ok(format!("10000 rounds over {} primes up to 2^61-1, deterministic", PRIMES.len()))
}

fn main() {
    let checks: Vec<Criterion> = vec![
        ("oracle equivalence on fixed groups", c1_fixed_groups),
        ("dihedral criteria", c2_dihedral),
        ("partition reduction", c3_partition),
        ("3-partition reduction, S_n and A_n", c4_three_partition),
        ("GL(2,p) decision and construction", c5_gl2),
        ("TL(2,p) criteria", c6_tl2),
        ("trace sets mod 7", c7_trace_sets),
        ("Heisenberg groups", c8_heisenberg),
        ("UT(4,p)", c9_ut4),
        ("semidirect reduction", c10_semidirect),
        ("saturation", c11_saturation),
        ("number theory", c12_number_theory),
    ];
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
