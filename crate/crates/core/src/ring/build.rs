use std::sync::Arc;

use super::descriptor::{ElemExpr, Encoding, RingDescriptor};
use super::table_module::TableModule;
use super::{construct_ring_with, Elem, Parts, Ring, MAX_TABLE_CARD};
use crate::arith::poly;
use crate::config::Config;
use crate::error::{Error, Result};

pub(super) struct Tables {
    pub card: usize,
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub zero: Elem,
    pub one: Elem,
    pub encodings: Vec<Encoding>,
    pub parts: Parts,
}

fn too_large(size: u128) -> Error {
    Error::TooLarge { size, cutoff: MAX_TABLE_CARD as u128 }
}

fn checked_card(card: u128) -> Result<usize> {
    if card > MAX_TABLE_CARD as u128 {
        Err(too_large(card))
    } else {
        Ok(card as usize)
    }
}

pub(super) fn build_tables(d: &RingDescriptor, cfg: &Config) -> Result<Tables> {
    match d {
        RingDescriptor::ZMod(n) | RingDescriptor::PrimeField(n) => residue_tables(*n),
        RingDescriptor::PolyQuotient { p, modulus } => poly_tables(*p, modulus.clone()),
        RingDescriptor::SeriesTrunc { p, precision } => {
            let mut modulus = vec![0u64; precision + 1];
            modulus[*precision] = 1;
            poly_tables(*p, modulus)
        }
        RingDescriptor::Product(fs) => {
            let factors = fs.iter().map(|f| construct_ring_with(f, cfg)).collect::<Result<Vec<_>>>()?;
            product_tables(factors)
        }
        RingDescriptor::TrivialExt { base, module } => {
            let base = construct_ring_with(base, cfg)?;
            let module = TableModule::build(&base, module)?;
            trivial_tables(base, Arc::new(module))
        }
        RingDescriptor::Corner { ambient, idempotent } => {
            let ambient = construct_ring_with(ambient, cfg)?;
            let e = ambient.decode(idempotent)?;
            if ambient.mul(e, e) != e || e == ambient.zero() {
                return Err(Error::InvalidDescriptor(format!("{idempotent} is not a nonzero idempotent")));
            }
            corner_tables(ambient, e)
        }
    }
}

fn residue_tables(n: u64) -> Result<Tables> {
    let card = checked_card(n as u128)?;
    let mut add = vec![0u32; card * card];
    let mut mul = vec![0u32; card * card];
    for a in 0..card {
        for b in 0..card {
            add[a * card + b] = ((a + b) % card) as u32;
            mul[a * card + b] = ((a as u64 * b as u64) % n) as u32;
        }
    }
    Ok(Tables {
        card,
        add,
        mul,
        zero: Elem(0),
        one: Elem(1 % n as u32),
        encodings: (0..n).map(Encoding::Int).collect(),
        parts: Parts::Atomic,
    })
}

fn coeffs_of(mut idx: usize, p: u64, d: usize) -> Vec<u64> {
    let mut c = vec![0u64; d];
    for slot in c.iter_mut() {
        *slot = idx as u64 % p;
        idx /= p as usize;
    }
    c
}

fn index_of_coeffs(c: &[u64], p: u64) -> usize {
    c.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

fn poly_tables(p: u64, modulus: Vec<u64>) -> Result<Tables> {
    let d = poly::degree(&modulus).unwrap();
    let card = checked_card((p as u128).pow(d as u32))?;
    let polys: Vec<Vec<u64>> = (0..card).map(|i| coeffs_of(i, p, d)).collect();
    let mut add = vec![0u32; card * card];
    let mut mul = vec![0u32; card * card];
    for a in 0..card {
        for b in 0..card {
            let s: Vec<u64> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * card + b] = index_of_coeffs(&s, p) as u32;
            if b < a {
                mul[a * card + b] = mul[b * card + a];
                continue;
            }
            let prod = poly::rem(&poly::mul(&poly::trim(polys[a].clone()), &poly::trim(polys[b].clone()), p), &modulus, p);
            let mut fixed = prod;
            fixed.resize(d, 0);
            mul[a * card + b] = index_of_coeffs(&fixed, p) as u32;
        }
    }
    Ok(Tables {
        card,
        add,
        mul,
        zero: Elem(0),
        one: Elem(1),
        encodings: polys.into_iter().map(Encoding::Coeffs).collect(),
        parts: Parts::Atomic,
    })
}

fn product_tables(factors: Vec<Ring>) -> Result<Tables> {
    let card = checked_card(factors.iter().map(|f| f.card() as u128).product())?;
    let sizes: Vec<usize> = factors.iter().map(|f| f.card()).collect();
    let split = |mut idx: usize| -> Vec<usize> {
        let mut comps = vec![0usize; sizes.len()];
        for (slot, &s) in comps.iter_mut().zip(&sizes).rev() {
            *slot = idx % s;
            idx /= s;
        }
        comps
    };
    let join = |comps: &[usize]| comps.iter().zip(&sizes).fold(0usize, |acc, (&c, &s)| acc * s + c);
    let comps: Vec<Vec<usize>> = (0..card).map(split).collect();
    let mut add = vec![0u32; card * card];
    let mut mul = vec![0u32; card * card];
    let mut buf_a = vec![0usize; sizes.len()];
    let mut buf_m = vec![0usize; sizes.len()];
    for a in 0..card {
        for b in 0..card {
            for (i, f) in factors.iter().enumerate() {
                let (x, y) = (Elem(comps[a][i] as u32), Elem(comps[b][i] as u32));
                buf_a[i] = f.add(x, y).idx();
                buf_m[i] = f.mul(x, y).idx();
            }
            add[a * card + b] = join(&buf_a) as u32;
            mul[a * card + b] = join(&buf_m) as u32;
        }
    }
    let zero = join(&factors.iter().map(|f| f.zero().idx()).collect::<Vec<_>>());
    let one = join(&factors.iter().map(|f| f.one().idx()).collect::<Vec<_>>());
    let encodings = comps
        .iter()
        .map(|c| Encoding::Tuple(c.iter().zip(&factors).map(|(&x, f)| f.encode(Elem(x as u32)).clone()).collect()))
        .collect();
    Ok(Tables {
        card,
        add,
        mul,
        zero: Elem(zero as u32),
        one: Elem(one as u32),
        encodings,
        parts: Parts::Product(factors),
    })
}

fn trivial_tables(base: Ring, module: Arc<TableModule>) -> Result<Tables> {
    let ne = module.card();
    let card = checked_card(base.card() as u128 * ne as u128)?;
    let split = |x: usize| (Elem((x / ne) as u32), (x % ne) as u32);
    let mut add = vec![0u32; card * card];
    let mut mul = vec![0u32; card * card];
    for x in 0..card {
        let (a, e) = split(x);
        for y in 0..card {
            let (b, f) = split(y);
            let s = base.add(a, b).0 * ne as u32 + module.add(e, f);
            // (a, e)(b, f) = (ab, af + be)
            let t = module.add(module.act(a, f), module.act(b, e));
            add[x * card + y] = s;
            mul[x * card + y] = base.mul(a, b).0 * ne as u32 + t;
        }
    }
    let encodings = (0..card)
        .map(|x| {
            let (a, e) = split(x);
            Encoding::Pair(Box::new(base.encode(a).clone()), Box::new(module.encode(e)))
        })
        .collect();
    let zero = Elem(base.zero().0 * ne as u32 + module.zero());
    let one = Elem(base.one().0 * ne as u32 + module.zero());
    Ok(Tables { card, add, mul, zero, one, encodings, parts: Parts::Trivial { base, module } })
}

fn corner_tables(ambient: Ring, e: Elem) -> Result<Tables> {
    let mut members: Vec<Elem> = ambient.all_elements().map(|x| ambient.mul(e, x)).collect();
    members.sort();
    members.dedup();
    let card = members.len();
    let mut pos = vec![u32::MAX; ambient.card()];
    for (i, m) in members.iter().enumerate() {
        pos[m.idx()] = i as u32;
    }
    let mut add = vec![0u32; card * card];
    let mut mul = vec![0u32; card * card];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            add[i * card + j] = pos[ambient.add(a, b).idx()];
            mul[i * card + j] = pos[ambient.mul(a, b).idx()];
        }
    }
    let encodings = members.iter().map(|&m| ambient.encode(m).clone()).collect();
    Ok(Tables {
        card,
        add,
        mul,
        zero: Elem(pos[ambient.zero().idx()]),
        one: Elem(pos[e.idx()]),
        encodings,
        parts: Parts::Corner { ambient, members },
    })
}

pub(super) fn product_components(ring: &Ring, x: Elem) -> Vec<Elem> {
    let factors = ring.product_factors().expect("not a product ring");
    let mut idx = x.idx();
    let mut comps = vec![Elem(0); factors.len()];
    for (slot, f) in comps.iter_mut().zip(factors).rev() {
        *slot = Elem((idx % f.card()) as u32);
        idx /= f.card();
    }
    comps
}

pub(super) fn product_element(ring: &Ring, comps: &[Elem]) -> Elem {
    let factors = ring.product_factors().expect("not a product ring");
    Elem(comps.iter().zip(factors).fold(0usize, |acc, (c, f)| acc * f.card() + c.idx()) as u32)
}

fn invalid(ring: &Ring, e: &ElemExpr) -> Error {
    Error::InvalidElement(format!("{e} is not an element of {ring}"))
}

pub(super) fn element_from_expr(ring: &Ring, e: &ElemExpr) -> Result<Elem> {
    match ring.descriptor() {
        RingDescriptor::ZMod(n) | RingDescriptor::PrimeField(n) => match e {
            ElemExpr::Int(v) => Ok(Elem((v % n) as u32)),
            ElemExpr::Poly(c) if poly::degree(c).unwrap_or(0) == 0 => {
                Ok(Elem((c.first().copied().unwrap_or(0) % n) as u32))
            }
            _ => Err(invalid(ring, e)),
        },
        RingDescriptor::PolyQuotient { p, modulus } => {
            let c = match e {
                ElemExpr::Int(v) => vec![*v],
                ElemExpr::Poly(c) => c.clone(),
                _ => return Err(invalid(ring, e)),
            };
            let reduced: Vec<u64> = c.iter().map(|x| x % p).collect();
            let mut r = poly::rem(&reduced, modulus, *p);
            r.resize(poly::degree(modulus).unwrap(), 0);
            Ok(Elem(index_of_coeffs(&r, *p) as u32))
        }
        RingDescriptor::SeriesTrunc { p, precision } => {
            let c = match e {
                ElemExpr::Int(v) => vec![*v],
                ElemExpr::Poly(c) => c.clone(),
                _ => return Err(invalid(ring, e)),
            };
            let mut r: Vec<u64> = c.iter().take(*precision).map(|x| x % p).collect();
            r.resize(*precision, 0);
            Ok(Elem(index_of_coeffs(&r, *p) as u32))
        }
        RingDescriptor::Product(_) => {
            let factors = ring.product_factors().unwrap();
            match e {
                ElemExpr::Tuple(items) if items.len() == factors.len() => {
                    let comps =
                        items.iter().zip(factors).map(|(it, f)| f.element(it)).collect::<Result<Vec<_>>>()?;
                    Ok(product_element(ring, &comps))
                }
                _ => Err(invalid(ring, e)),
            }
        }
        RingDescriptor::TrivialExt { .. } => {
            let (base, module) = ring.trivial_parts().unwrap();
            match e {
                ElemExpr::Tuple(items) if items.len() == 2 => {
                    let a = base.element(&items[0])?;
                    let m = module.element(&items[1])?;
                    Ok(ring.pair(a, m))
                }
                // Bare base elements embed as (a, 0).
                ElemExpr::Int(_) | ElemExpr::Poly(_) => {
                    let a = base.element(e)?;
                    Ok(ring.pair(a, module.zero()))
                }
                _ => Err(invalid(ring, e)),
            }
        }
        RingDescriptor::Corner { .. } => {
            let super::Parts::Corner { ambient, members } = &ring.0.parts else { unreachable!() };
            let x = ambient.element(e)?;
            members.binary_search(&x).map(|i| Elem(i as u32)).map_err(|_| invalid(ring, e))
        }
    }
}
