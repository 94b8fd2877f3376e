use ghal::corpus::{write_bundled, Corpus};
use ghal::format::{complex_file, complex_of, module_file, module_of};
use ghal::suites::{run_suite, Suite};

#[test]
fn bundled_corpus_matches_generator() {
    let dir = tempfile::tempdir().unwrap();
    write_bundled(dir.path()).unwrap();
    let fresh = Corpus::load(dir.path()).unwrap();
    let shipped = Corpus::load(&Corpus::default_root()).unwrap();
    assert_eq!(fresh.algebras.len(), 4);
    for (a, b) in fresh.algebras.iter().zip(&shipped.algebras) {
        assert_eq!(a.digest, b.digest, "{}", a.name);
        let names = |c: &ghal::corpus::CorpusAlgebra| -> Vec<(String, String)> {
            c.modules.iter().map(|m| (m.name.clone(), m.digest.clone())).chain(c.complexes.iter().map(|x| (x.name.clone(), x.digest.clone()))).collect()
        };
        assert_eq!(names(a), names(b));
    }
}

#[test]
fn corpus_values_round_trip() {
    let c = Corpus::load(&Corpus::default_root()).unwrap();
    let (mut modules, mut complexes) = (0, 0);
    for alg in &c.algebras {
        for m in &alg.modules {
            assert_eq!(module_of(&alg.algebra, &module_file(&m.value)).unwrap(), m.value);
            modules += 1;
        }
        for x in &alg.complexes {
            assert_eq!(complex_of(&alg.algebra, &complex_file(&x.value)).unwrap(), x.value);
            complexes += 1;
        }
    }
    assert!(modules >= 12 && complexes >= 20);
}

#[test]
fn reports_are_deterministic() {
    let c = Corpus::load(&Corpus::default_root()).unwrap();
    for suite in [Suite::FrobeniusShift, Suite::Classes] {
        let a = run_suite(&c, suite).unwrap();
        let b = run_suite(&c, suite).unwrap();
        assert_eq!(a.without_timestamp(), b.without_timestamp());
        assert!(a.passed(), "{}", suite.name());
        let keys: Vec<_> = a.checks.iter().map(|r| (r.name.clone(), r.digest.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
