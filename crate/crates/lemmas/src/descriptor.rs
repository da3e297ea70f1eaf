use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "CHK-P1")]
    P1,
    #[serde(rename = "CHK-P2")]
    P2,
    #[serde(rename = "CHK-P3")]
    P3,
    #[serde(rename = "CHK-P4")]
    P4,
    #[serde(rename = "CHK-L5")]
    L5,
    #[serde(rename = "CHK-P6")]
    P6,
    #[serde(rename = "CHK-L7")]
    L7,
    #[serde(rename = "CHK-L8")]
    L8,
    #[serde(rename = "CHK-L9")]
    L9,
    #[serde(rename = "CHK-T10")]
    T10,
    #[serde(rename = "CHK-L11")]
    L11,
    #[serde(rename = "CHK-L12")]
    L12,
    #[serde(rename = "CHK-L13")]
    L13,
    #[serde(rename = "CHK-L14")]
    L14,
    #[serde(rename = "CHK-L15")]
    L15,
    #[serde(rename = "CHK-L16")]
    L16,
    #[serde(rename = "CHK-S31")]
    S31,
    #[serde(rename = "CHK-S33")]
    S33,
    #[serde(rename = "CHK-FKS")]
    Fks,
}

/// What a check tests, in the vocabulary of this crate.
#[derive(Clone, Copy, Debug)]
pub struct CheckDescriptor {
    pub id: CheckId,
    /// Short name of the claim being exercised.
    pub topic: &'static str,
    /// The instances the check is run on.
    pub instances: &'static str,
    pub hypothesis: &'static str,
    pub conclusion: &'static str,
    /// Whether the primitivity convention changes instance admission.
    pub uses_convention: bool,
    /// Control checks must pass on every applicable instance.
    pub control: bool,
}

pub const DESCRIPTORS: [CheckDescriptor; 19] = [
    CheckDescriptor {
        id: CheckId::P1,
        topic: "quotient of a point-set stabilizer",
        instances: "transitive G; one automorphic point set S with 2 <= |S| < n per G-orbit, ordered increasingly as a",
        hypothesis: "S is the orbit of its own setwise stabilizer",
        conclusion: "with K = Stab_G(S) and H the pointwise stabilizer of a: H is normal in K, |Aut(K a)| = |K|/|H|, and K restricted to S is exactly Aut(K a)",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::P2,
        topic: "normality from matching coset partitions",
        instances: "transitive G, k in {2,3}, X a k-orbit, Y a proper subgroup orbit inside X up to G-translation",
        hypothesis: "the G-translates of Y coincide with the orbits of Stab(Y) on X",
        conclusion: "Stab(Y) is normal in G",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::P3,
        topic: "normality of the block kernel",
        instances: "transitive G and each nontrivial block system Q",
        hypothesis: "Q is G-invariant and nontrivial",
        conclusion: "the subgroup fixing every block of Q is normal in G",
        uses_convention: false,
        control: true,
    },
    CheckDescriptor {
        id: CheckId::P4,
        topic: "meets and joins of translate partitions",
        instances: "transitive G, k in {2,3}, pairs of distinct overlapping subgroup orbits Y, Z inside one k-orbit",
        hypothesis: "Y and Z meet, and the G-translates of each form a partition of the k-orbit",
        conclusion: "meet of the translate partitions = translates of Y∩Z; join = translates of the join class U; Stab(Y∩Z) = Stab(Y)∩Stab(Z); Stab(U) = <Stab(Y), Stab(Z)>",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L5,
        topic: "automorphism count of a k-orbit with partitioning suborbits",
        instances: "k in {2,3} and every k-orbit X of G",
        hypothesis: "for every orbit Y of a subgroup of A = Aut(X) on X, the A-translates of Y partition X (UNKNOWN when the subgroup lattice of A is out of reach)",
        conclusion: "|A| = |X|",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::P6,
        topic: "automorphism excess of incoherent k-sets",
        instances: "k in {2,3} and every k-orbit X of G",
        hypothesis: "X covers V, splits into at least two coordinate components, and Aut(X) is transitive on X",
        conclusion: "|Aut(X)| > |X|",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L7,
        topic: "automorphism count of elementary coherent k-orbits",
        instances: "k in {2,3} and every k-orbit X of G",
        hypothesis: "X is coherent and no subgroup orbit of Aut(X) on a smaller ground set is coherent or incoherent",
        conclusion: "|Aut(X)| = |X|",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L8,
        topic: "concatenating two isomorphic automorphic tuples",
        instances: "transitive G, an automorphic k-set S with 2k <= n, and a disjoint G-image S' of S",
        hypothesis: "the remaining points contain no G-image of S",
        conclusion: "S ∪ S' is automorphic; A = Stab(S) ∩ Stab(S') is nontrivial; the elements of N_G(A) preserving S ∪ S' act transitively on it with blocks S and S'",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L9,
        topic: "concatenating three or more isomorphic automorphic tuples",
        instances: "transitive G and families of l >= 3 pairwise disjoint G-images of an automorphic k-set",
        hypothesis: "the remaining points contain no G-image of the family members",
        conclusion: "the union is automorphic and the elements of N_G(A) preserving it act transitively with the members as blocks, A being the intersection of the member stabilizers; whether A is trivial is recorded only",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::T10,
        topic: "cover by automorphic sets in primitive groups",
        instances: "each primitive G",
        hypothesis: "G is primitive under the configured convention",
        conclusion: "with k the largest automorphic number dividing n below n, V splits into automorphic k-sets lying in one G-orbit, or failing that into arbitrary automorphic k-sets",
        uses_convention: true,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L11,
        topic: "faithful block action forces 2-closure",
        instances: "each transitive G",
        hypothesis: "G acts faithfully on some nontrivial block system",
        conclusion: "G equals its 2-closure",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L12,
        topic: "trivial pointwise stabilizer of a faithful block",
        instances: "transitive G, a nontrivial block system Q and one block B of Q",
        hypothesis: "G acts faithfully on the blocks of Q",
        conclusion: "the pointwise stabilizer of B is trivial",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L13,
        topic: "prime-power refinement of faithful block systems",
        instances: "transitive G and each nontrivial block system Q",
        hypothesis: "G acts faithfully on Q and the block size is not prime",
        conclusion: "some block system refining Q has prime-power block size; whether a proper refinement of prime block size exists is recorded separately",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L14,
        topic: "prime-power refinement preserving faithfulness",
        instances: "transitive G and each nontrivial block system Q",
        hypothesis: "the block size of Q is not a prime power",
        conclusion: "a refining block system with prime-power block size is faithful exactly when Q is; the weaker reading (faithfulness only carried forward) is recorded too",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L15,
        topic: "2-closure transfer to maximal imprimitive subgroups",
        instances: "primitive G and each maximal transitive imprimitive subgroup A with no faithful block action, up to conjugacy",
        hypothesis: "G is primitive under the configured convention",
        conclusion: "G is 2-closed exactly when A is",
        uses_convention: true,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::L16,
        topic: "primitive groups without imprimitive subgroups",
        instances: "each primitive G",
        hypothesis: "G is primitive under the configured convention and has no transitive imprimitive subgroup",
        conclusion: "G is not 2-closed",
        uses_convention: true,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::S31,
        topic: "regular elements in groups with faithful block actions",
        instances: "each transitive G",
        hypothesis: "G acts faithfully on some nontrivial block system",
        conclusion: "G has a non-identity element whose cycles all have one length",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::S33,
        topic: "regular elements in block kernels",
        instances: "transitive G and each block system Q of prime block size p",
        hypothesis: "G is 2-closed and acts unfaithfully on every nontrivial block system",
        conclusion: "the subgroup fixing every block of Q has an element of order p with all cycles of length p",
        uses_convention: false,
        control: false,
    },
    CheckDescriptor {
        id: CheckId::Fks,
        topic: "fixed-point-free prime-power element",
        instances: "each transitive G",
        hypothesis: "G is transitive",
        conclusion: "G has a fixed-point-free element of prime-power order",
        uses_convention: false,
        control: true,
    },
];

impl CheckId {
    pub fn all() -> impl Iterator<Item = CheckId> {
        DESCRIPTORS.iter().map(|d| d.id)
    }

    pub fn descriptor(self) -> &'static CheckDescriptor {
        DESCRIPTORS.iter().find(|d| d.id == self).expect("every id has a descriptor")
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::P1 => "CHK-P1",
            CheckId::P2 => "CHK-P2",
            CheckId::P3 => "CHK-P3",
            CheckId::P4 => "CHK-P4",
            CheckId::L5 => "CHK-L5",
            CheckId::P6 => "CHK-P6",
            CheckId::L7 => "CHK-L7",
            CheckId::L8 => "CHK-L8",
            CheckId::L9 => "CHK-L9",
            CheckId::T10 => "CHK-T10",
            CheckId::L11 => "CHK-L11",
            CheckId::L12 => "CHK-L12",
            CheckId::L13 => "CHK-L13",
            CheckId::L14 => "CHK-L14",
            CheckId::L15 => "CHK-L15",
            CheckId::L16 => "CHK-L16",
            CheckId::S31 => "CHK-S31",
            CheckId::S33 => "CHK-S33",
            CheckId::Fks => "CHK-FKS",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts `CHK-L11`, `L11` and lowercase variants.
impl FromStr for CheckId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        let short = upper.strip_prefix("CHK-").unwrap_or(&upper);
        CheckId::all()
            .find(|id| &id.name()[4..] == short)
            .ok_or_else(|| LabError::UnknownCheck(s.to_string()))
    }
}
