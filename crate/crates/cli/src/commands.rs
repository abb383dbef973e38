//! One function per subcommand, each returning its report.

use nilrep::basis::{build_basis, coordinate_insert_bound, dimension_bound, general_insert_bound, Algorithm, BasisOptions};
use nilrep::collect::collect as collect_word;
use nilrep::matrep::{
    check_unitriangular, non_unipotent_generators, representation, verify_faithful_sample, verify_relations,
};
use nilrep::multpoly::{all_action_polys, qbar_table, ActionPolys, InterpolationInfo, InterpolationOptions};
use nilrep::{NilpotentPresentation, QBasis, QMatrixRep};

use crate::report::{
    BasisReport, CollectReport, Counts, GeneratorPolys, MatrixJson, PolysReport, RelationsJson, RepReport,
    SamplingJson, UnitriangularJson, VerifyReport,
};
use crate::{CliResult, Source};

pub fn collect(src: &Source, word: &str) -> CliResult<CollectReport> {
    let pres = src.load()?;
    let w = pres.parse_word(word)?;
    let nf = collect_word(&pres, &w)?;
    Ok(CollectReport {
        source: src.to_string(),
        word: word.to_string(),
        normal_form: nf.0.iter().map(ToString::to_string).collect(),
    })
}

/// A presentation together with its action polynomials.
pub struct Prepared {
    pub pres: NilpotentPresentation,
    pub aps: Vec<ActionPolys>,
    pub infos: Vec<InterpolationInfo>,
    pub m: usize,
}

pub fn prepare(src: &Source, degree_cap: Option<u32>) -> CliResult<Prepared> {
    let pres = src.load()?;
    let opts = InterpolationOptions {
        degree_cap,
        ..Default::default()
    };
    let (aps, infos): (Vec<_>, Vec<_>) = all_action_polys(&pres, &opts)?.into_iter().unzip();
    let m = qbar_table(&aps).m;
    Ok(Prepared { pres, aps, infos, m })
}

pub fn polys(src: &Source, degree_cap: Option<u32>) -> CliResult<PolysReport> {
    let p = prepare(src, degree_cap)?;
    let table = qbar_table(&p.aps);
    let action = p
        .aps
        .iter()
        .zip(&p.infos)
        .map(|(ap, info)| GeneratorPolys {
            generator: p.pres.name(ap.j).to_string(),
            index: ap.j + 1,
            degree: info.degree,
            samples: info.samples,
            polys: ap.polys.iter().map(ToString::to_string).collect(),
        })
        .collect();
    Ok(PolysReport {
        source: src.to_string(),
        generators: p.pres.names().to_vec(),
        qbar_terms: table.counts,
        m: table.m,
        action,
    })
}

fn build(p: &Prepared, algorithm: Algorithm) -> CliResult<QBasis> {
    Ok(build_basis(&p.aps, algorithm, &BasisOptions::default())?)
}

pub fn basis(src: &Source, algorithm: Algorithm, counts: bool) -> CliResult<BasisReport> {
    let p = prepare(src, None)?;
    let b = build(&p, algorithm)?;
    let n = p.pres.len();
    let counts = counts.then(|| Counts {
        insert_count: b.insert_count,
        insert_bound: match algorithm {
            Algorithm::Figure1 => general_insert_bound(n, p.m),
            Algorithm::Figure2 => coordinate_insert_bound(n, p.m),
        },
        reduction_steps: b.reduction_steps,
        seed_orbit_inserts: b.seed_orbit_inserts,
    });
    Ok(BasisReport::new(
        src.to_string(),
        algorithm.to_string(),
        n,
        p.m,
        dimension_bound(n, p.m),
        b.elems(),
        counts,
    ))
}

fn matrices(pres: &NilpotentPresentation, rep: &QMatrixRep) -> Vec<MatrixJson> {
    rep.mats
        .iter()
        .enumerate()
        .map(|(j, m)| MatrixJson::new(pres.name(j).to_string(), m))
        .collect()
}

pub fn rep(src: &Source, algorithm: Algorithm) -> CliResult<RepReport> {
    let p = prepare(src, None)?;
    let b = build(&p, algorithm)?;
    let rep = representation(&p.aps, &b)?;
    Ok(RepReport {
        source: src.to_string(),
        algorithm: algorithm.to_string(),
        dimension: rep.dim,
        generators: p.pres.names().to_vec(),
        basis: rep.basis.iter().map(ToString::to_string).collect(),
        matrices: matrices(&p.pres, &rep),
    })
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 1000,
            max_len: 16,
            seed: 0,
        }
    }
}

pub fn verify(src: &Source, algorithm: Algorithm, opts: &VerifyOptions) -> CliResult<VerifyReport> {
    let p = prepare(src, None)?;
    let b = build(&p, algorithm)?;
    let rep = representation(&p.aps, &b)?;
    let relations = verify_relations(&p.pres, &rep)?;
    let sampling = verify_faithful_sample(&p.pres, &rep, opts.trials, opts.max_len, opts.seed)?;
    let tri = check_unitriangular(&rep);
    let non_unipotent: Vec<String> = non_unipotent_generators(&rep)?
        .into_iter()
        .map(|j| p.pres.name(j).to_string())
        .collect();
    let passed = relations.passed() && sampling.passed() && tri.passed() && non_unipotent.is_empty();
    Ok(VerifyReport {
        source: src.to_string(),
        algorithm: algorithm.to_string(),
        dimension: rep.dim,
        relations: RelationsJson::from(&relations),
        sampling: SamplingJson::new(&sampling, opts.max_len, opts.seed),
        unitriangular: UnitriangularJson::from(&tri),
        non_unipotent,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilrep::Family;

    #[test]
    fn collect_examples() {
        let src = Source::Builtin(Family::Heisenberg);
        assert_eq!(collect(&src, "x2 x1").unwrap().text(), "(1, 1, 1)\n");
        assert_eq!(collect(&src, "").unwrap().text(), "(0, 0, 0)\n");
        assert_eq!(collect(&src, "x2 ^").unwrap_err().status(), crate::Status::InputError);
    }

    #[test]
    fn heisenberg_basis_with_counts() {
        let src = Source::Builtin(Family::Heisenberg);
        let r = basis(&src, Algorithm::Figure2, true).unwrap();
        assert_eq!(r.dimension, 4);
        assert_eq!(r.basis, vec!["1", "x1", "x2", "x3"]);
        assert_eq!(r.counts.unwrap().insert_count, 7);
    }

    #[test]
    fn verify_free_class2_rank3() {
        let src = Source::Builtin(Family::FreeNilpotentClass2(3));
        let opts = VerifyOptions {
            trials: 500,
            seed: 7,
            ..Default::default()
        };
        let r = verify(&src, Algorithm::Figure2, &opts).unwrap();
        assert!(r.passed, "{}", r.text());
    }

    #[test]
    fn figure2_gap_is_an_internal_error() {
        let src = Source::Builtin(Family::Unitriangular(5));
        let err = basis(&src, Algorithm::Figure2, false).unwrap_err();
        assert_eq!(err.status(), crate::Status::Internal);
        assert_eq!(basis(&src, Algorithm::Figure1, false).unwrap().dimension, 16);
    }
}
