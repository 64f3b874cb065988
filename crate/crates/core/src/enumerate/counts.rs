use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact counts of syntax trees of each length, per syntactic category.
///
/// Besides the five categories the table keeps the convolutions the
/// productions need (`aa[s] = Σ a[i]·a[s−i]` and friends), indexed by the
/// total length of the children.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub(crate) n: Vec<BigUint>,
    pub(crate) x: Vec<BigUint>,
    pub(crate) a: Vec<BigUint>,
    pub(crate) b: Vec<BigUint>,
    pub(crate) p: Vec<BigUint>,
    pub(crate) aa: Vec<BigUint>,
    pub(crate) bb: Vec<BigUint>,
    pub(crate) xa: Vec<BigUint>,
    pub(crate) pp: Vec<BigUint>,
    pub(crate) bp: Vec<BigUint>,
    pub(crate) bpp: Vec<BigUint>,
    cumulative: Vec<BigUint>,
}

fn convolve(u: &[BigUint], v: &[BigUint], s: usize) -> BigUint {
    let mut acc = BigUint::zero();
    for i in 0..=s {
        if !u[i].is_zero() && !v[s - i].is_zero() {
            acc += &u[i] * &v[s - i];
        }
    }
    acc
}

impl CountTable {
    /// Table covering every length up to and including `max_len`.
    pub fn new(max_len: u32) -> Self {
        let mut t = CountTable {
            n: vec![],
            x: vec![],
            a: vec![],
            b: vec![],
            p: vec![],
            aa: vec![],
            bb: vec![],
            xa: vec![],
            pp: vec![],
            bp: vec![],
            bpp: vec![],
            cumulative: vec![],
        };
        t.grow_to(max_len);
        t
    }

    /// Smallest table whose cumulative program count exceeds `position`.
    pub fn covering(position: &BigUint) -> Self {
        let mut t = CountTable::new(1);
        while t.cumulative.last().unwrap() <= position {
            t.grow_to(t.max_len() + 1);
        }
        t
    }

    pub fn max_len(&self) -> u32 {
        (self.p.len() - 1) as u32
    }

    pub fn grow_to(&mut self, max_len: u32) {
        while self.p.len() <= max_len as usize {
            self.push_length();
        }
    }

    fn push_length(&mut self) {
        let l = self.p.len();
        let ten = BigUint::from(10u32);
        let n = match l {
            0 => BigUint::zero(),
            1 => ten.clone(),
            d => BigUint::from(9u32) * ten.pow(d as u32 - 1),
        };
        let x = if l >= 2 { self.n[l - 1].clone() } else { BigUint::zero() };
        self.n.push(n);
        self.x.push(x);

        let prev = |v: &Vec<BigUint>| if l >= 1 { v[l - 1].clone() } else { BigUint::zero() };
        let a = &self.n[l] + &self.x[l] + BigUint::from(3u32) * prev(&self.aa);
        self.a.push(a);

        let unit = if l == 1 { BigUint::from(2u32) } else { BigUint::zero() };
        let b = unit + BigUint::from(2u32) * prev(&self.aa) + prev(&self.b) + BigUint::from(2u32) * prev(&self.bb);
        self.b.push(b);

        let skip = if l == 1 { BigUint::one() } else { BigUint::zero() };
        let p = skip + prev(&self.xa) + prev(&self.pp) + prev(&self.bpp) + prev(&self.bp);
        self.p.push(p);

        // Convolutions with total l only need entries up to l, all known now.
        self.aa.push(convolve(&self.a, &self.a, l));
        self.bb.push(convolve(&self.b, &self.b, l));
        self.xa.push(convolve(&self.x, &self.a, l));
        self.pp.push(convolve(&self.p, &self.p, l));
        self.bp.push(convolve(&self.b, &self.p, l));
        let bpp = convolve(&self.b, &self.pp, l);
        self.bpp.push(bpp);

        let cum = self.cumulative.last().cloned().unwrap_or_default() + &self.p[l];
        self.cumulative.push(cum);
    }

    /// Number of programs of length exactly `len`.
    pub fn programs(&self, len: u32) -> &BigUint {
        &self.p[len as usize]
    }

    /// Number of programs of length at most `len`.
    pub fn cumulative(&self, len: u32) -> &BigUint {
        &self.cumulative[len as usize]
    }

    pub fn arith(&self, len: u32) -> &BigUint {
        &self.a[len as usize]
    }

    pub fn boolean(&self, len: u32) -> &BigUint {
        &self.b[len as usize]
    }

    pub fn registers(&self, len: u32) -> &BigUint {
        &self.x[len as usize]
    }

    pub fn numerals(&self, len: u32) -> &BigUint {
        &self.n[len as usize]
    }

    /// Length of the program at canonical position `k`, if the table reaches it.
    pub fn length_of_position(&self, k: &BigUint) -> Option<u32> {
        // cumulative is nondecreasing; first length whose cumulative exceeds k
        let idx = self.cumulative.partition_point(|c| c <= k);
        (idx < self.cumulative.len()).then_some(idx as u32)
    }
}

/// Number of programs of length `len`.
pub fn count_programs(len: u32) -> BigUint {
    CountTable::new(len).programs(len).clone()
}

/// Number of programs of length at most `len`.
pub fn cumulative_count(len: u32) -> BigUint {
    CountTable::new(len).cumulative(len).clone()
}
