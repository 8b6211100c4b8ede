//! Named families of small groups and the catalog used by the sweep.

use serde::Serialize;

use crate::error::{GroupError, HarnessError};
use crate::group::{Element, FiniteGroup};
use crate::permutation::Permutation;

/// Largest order `build_catalog` accepts.
pub const CATALOG_ORDER_CAP: usize = 64;

/// How a catalog group was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    Quaternion,
    DirectProduct {
        factors: Vec<String>,
    },
    Semidirect {
        p: usize,
        q: usize,
        multiplier: usize,
    },
    Exhaustive {
        order: usize,
        index: usize,
    },
    /// Read from a file or other external input.
    Input,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
    pub construction: Construction,
}

/// `Z_n` with element `k` standing for `g^k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroup::from_table_with_labels(table, labels).expect("cyclic table is a group")
}

pub fn klein() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

/// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k` in that order.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign flip, unit) for units 1, i, j, k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let decode = |e: usize| (e % 2 == 1, e / 2);
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (sa, ua) = decode(a);
                    let (sb, ub) = decode(b);
                    let (s, u) = UNIT[ua][ub];
                    2 * u + usize::from(sa ^ sb ^ s)
                })
                .collect()
        })
        .collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    FiniteGroup::from_table_with_labels(table, labels).expect("quaternion table is a group")
}

/// Symmetries of the regular `n`-gon, order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::Construction(format!(
            "dihedral group needs n >= 3, got {n}"
        )));
    }
    let rotation = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    FiniteGroup::from_permutations(n, &[rotation, reflection], 2 * n)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    let order: usize = (1..=n).product();
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::parse_cycles("(0 1)", Some(n))?);
        gens.push(Permutation::from_images(
            (0..n).map(|i| (i + 1) % n).collect(),
        )?);
    }
    FiniteGroup::from_permutations(n.max(1), &gens, order)
}

/// Even permutations, generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    let order: usize = (1..=n).product::<usize>() / 2;
    let gens = (2..n)
        .map(|k| Permutation::parse_cycles(&format!("(0 1 {k})"), Some(n)))
        .collect::<Result<Vec<_>, _>>()?;
    FiniteGroup::from_permutations(n.max(1), &gens, order.max(1))
}

/// `G × H` with `(a, b)` at index `a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    let n = g.order() * m;
    let table = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| format!("({},{})", g.label(x / m), h.label(x % m)))
        .collect();
    FiniteGroup::from_table_with_labels(table, labels).expect("direct product of groups")
}

/// `N ⋊ H` for cyclic `H = ⟨generator⟩` acting through `automorphism`
/// (a permutation of the element indices of `N`): `generator^k` acts as
/// `automorphism^k`. Element `(n, h)` sits at index `n·|H| + h`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    generator: Element,
    automorphism: &Permutation,
) -> Result<FiniteGroup, GroupError> {
    let nn = normal.order();
    let hn = acting.order();
    if automorphism.degree() != nn {
        return Err(GroupError::Construction(format!(
            "automorphism has degree {} but the normal factor has order {nn}",
            automorphism.degree()
        )));
    }
    for a in normal.elements() {
        for b in normal.elements() {
            if automorphism.apply(normal.mul(a, b))
                != normal.mul(automorphism.apply(a), automorphism.apply(b))
            {
                return Err(GroupError::Construction(format!(
                    "map is not a homomorphism at ({a}, {b})"
                )));
            }
        }
    }
    let mut log = vec![usize::MAX; hn];
    for (k, p) in acting.powers(generator).into_iter().enumerate() {
        log[p] = k;
    }
    if log.contains(&usize::MAX) {
        return Err(GroupError::Construction(
            "acting group is not generated by the given element".into(),
        ));
    }
    let mut action = vec![Permutation::identity(nn)];
    for k in 1..=hn {
        action.push(automorphism.compose(&action[k - 1]));
    }
    if !action[hn].is_identity() {
        return Err(GroupError::Construction(format!(
            "automorphism order does not divide {hn}"
        )));
    }
    let n = nn * hn;
    let table = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (n1, h1) = (x / hn, x % hn);
                    let (n2, h2) = (y / hn, y % hn);
                    let twisted = action[log[h1]].apply(n2);
                    normal.mul(n1, twisted) * hn + acting.mul(h1, h2)
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| format!("({},{})", normal.label(x / hn), acting.label(x % hn)))
        .collect();
    FiniteGroup::from_table_with_labels(table, labels)
}

/// The nonabelian `Z_p ⋊ Z_q` for primes with `q | p - 1`, together with the
/// multiplier `r` of order `q` mod `p` that defines the action `x ↦ r·x`.
pub fn cyclic_semidirect(p: usize, q: usize) -> Result<(FiniteGroup, usize), GroupError> {
    if !is_prime(p) || !is_prime(q) || !(p - 1).is_multiple_of(q) {
        return Err(GroupError::Construction(format!(
            "Z{p}:Z{q} needs primes with q | p-1"
        )));
    }
    let r = (2..p)
        .find(|&r| multiplicative_order(r, p) == q)
        .expect("(Z/p)* is cyclic so an element of order q exists");
    let auto = Permutation::from_images((0..p).map(|k| k * r % p).collect())?;
    let g = semidirect_product(&cyclic(p), &cyclic(q), 1, &auto)?;
    Ok((g, r))
}

fn multiplicative_order(r: usize, p: usize) -> usize {
    let mut x = r % p;
    let mut k = 1;
    while x != 1 {
        x = x * r % p;
        k += 1;
    }
    k
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Catalog of named groups of order at most `max_order`.
///
/// Contents, in order: `Z1..Z{max}`; abelian products `ZaxZb` and
/// `ZaxZbxZc` (factors ascending, each at least 2) and `Z2^k` for `k ≥ 4`;
/// `Dn`; `Q8`; `Sn`; `An` for `n ≥ 4`; `Zp:Zq`; then each nonabelian entry
/// times `Zm` and times each nonabelian entry of equal or later position.
pub fn build_catalog(max_order: usize) -> Result<Vec<CatalogEntry>, HarnessError> {
    if max_order > CATALOG_ORDER_CAP {
        return Err(HarnessError::OrderCapExceeded {
            order: max_order,
            cap: CATALOG_ORDER_CAP,
        });
    }
    let wrap = |name: &str| {
        let name = name.to_string();
        move |source| HarnessError::Construction {
            name: name.clone(),
            source,
        }
    };
    let mut out = Vec::new();
    let mut push = |name: String, group: FiniteGroup, construction: Construction| {
        out.push(CatalogEntry {
            name,
            group,
            construction,
        })
    };

    for n in 1..=max_order {
        push(format!("Z{n}"), cyclic(n), Construction::Cyclic { n });
    }
    for a in 2..=max_order {
        for b in a..=max_order / a {
            let g = direct_product(&cyclic(a), &cyclic(b));
            let factors = vec![format!("Z{a}"), format!("Z{b}")];
            push(
                format!("Z{a}xZ{b}"),
                g,
                Construction::DirectProduct { factors },
            );
            for c in b..=max_order / (a * b) {
                let g = direct_product(&direct_product(&cyclic(a), &cyclic(b)), &cyclic(c));
                let factors = vec![format!("Z{a}"), format!("Z{b}"), format!("Z{c}")];
                push(
                    format!("Z{a}xZ{b}xZ{c}"),
                    g,
                    Construction::DirectProduct { factors },
                );
            }
        }
    }
    let mut k = 4;
    while 1usize << k <= max_order {
        let g = (1..k).fold(cyclic(2), |acc, _| direct_product(&acc, &cyclic(2)));
        let factors = vec!["Z2".to_string(); k];
        push(
            format!("Z2^{k}"),
            g,
            Construction::DirectProduct { factors },
        );
        k += 1;
    }

    let mut nonabelian: Vec<(String, FiniteGroup)> = Vec::new();
    for n in (3..).take_while(|n| 2 * n <= max_order) {
        let name = format!("D{n}");
        let g = dihedral(n).map_err(wrap(&name))?;
        nonabelian.push((name.clone(), g.clone()));
        push(name, g, Construction::Dihedral { n });
    }
    if max_order >= 8 {
        nonabelian.push(("Q8".into(), quaternion()));
        push("Q8".into(), quaternion(), Construction::Quaternion);
    }
    for n in (3..).take_while(|&n| (1..=n).product::<usize>() <= max_order) {
        let name = format!("S{n}");
        let g = symmetric(n).map_err(wrap(&name))?;
        nonabelian.push((name.clone(), g.clone()));
        push(name, g, Construction::Symmetric { n });
    }
    for n in (4..).take_while(|&n| (1..=n).product::<usize>() / 2 <= max_order) {
        let name = format!("A{n}");
        let g = alternating(n).map_err(wrap(&name))?;
        nonabelian.push((name.clone(), g.clone()));
        push(name, g, Construction::Alternating { n });
    }
    for p in (3..=max_order / 2).filter(|&p| is_prime(p)) {
        for q in (2..p).filter(|&q| is_prime(q) && (p - 1) % q == 0 && p * q <= max_order) {
            let name = format!("Z{p}:Z{q}");
            let (g, multiplier) = cyclic_semidirect(p, q).map_err(wrap(&name))?;
            nonabelian.push((name.clone(), g.clone()));
            push(name, g, Construction::Semidirect { p, q, multiplier });
        }
    }
    for (i, (name, g)) in nonabelian.iter().enumerate() {
        for m in (2..).take_while(|m| g.order() * m <= max_order) {
            let factors = vec![name.clone(), format!("Z{m}")];
            push(
                format!("{name}xZ{m}"),
                direct_product(g, &cyclic(m)),
                Construction::DirectProduct { factors },
            );
        }
        for (other, h) in &nonabelian[i..] {
            if g.order() * h.order() <= max_order {
                let factors = vec![name.clone(), other.clone()];
                push(
                    format!("{name}x{other}"),
                    direct_product(g, h),
                    Construction::DirectProduct { factors },
                );
            }
        }
    }
    Ok(out)
}
