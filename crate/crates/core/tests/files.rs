use belt_makespan::data::{synthesize_log, CorpusDir, CorpusProfile, TimestampLog};
use belt_makespan::data::generate_corpus;
use belt_makespan::model::{decode, InjectionSequence, Instance, InstanceFile, SequenceFile};
use belt_makespan::Error;

#[test]
fn instance_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let inst = Instance::new(4, [("A", 10, 2), ("B", 7, 3)]).unwrap();
    let path = dir.path().join("inst.json");
    inst.to_file().save(&path).unwrap();
    let (back, warnings) = Instance::load(&path).unwrap();
    assert_eq!(back, inst);
    assert!(warnings.is_empty());
}

#[test]
fn oversized_capacity_is_clamped_with_a_warning() {
    let raw = InstanceFile::from_json(r#"{"slots": 2, "types": [{"id": "A", "demand": 5, "capacity": 4}]}"#).unwrap();
    let (inst, warnings) = belt_makespan::model::validate_instance(&raw).unwrap();
    assert_eq!(inst.types()[0].capacity, 2);
    assert_eq!(warnings.len(), 1);
}

#[test]
fn invalid_instances_are_rejected() {
    for text in [
        r#"{"slots": 3, "types": []}"#,
        r#"{"slots": 3, "types": [{"id": "A", "demand": 0, "capacity": 1}]}"#,
        r#"{"slots": 3, "types": [{"id": "A", "demand": 1, "capacity": -1}]}"#,
        r#"{"slots": 3, "types": [{"id": "A", "demand": 1, "capacity": 1}, {"id": "A", "demand": 2, "capacity": 1}]}"#,
    ] {
        let raw = InstanceFile::from_json(text).unwrap();
        assert!(matches!(
            belt_makespan::model::validate_instance(&raw),
            Err(Error::InvalidInstance(_))
        ));
    }
}

#[test]
fn sequence_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let inst = Instance::new(3, [("A", 4, 2), ("B", 3, 1)]).unwrap();
    let seq = InjectionSequence::from_ids(&inst, &["A", "B", "A"]).unwrap();
    let path = dir.path().join("seq.json");
    seq.to_file(&inst).save(&path).unwrap();
    assert_eq!(SequenceFile::load(&path).unwrap().resolve(&inst).unwrap(), seq);

    let unknown = SequenceFile { entries: vec!["Z".into()] };
    assert!(matches!(unknown.resolve(&inst), Err(Error::UnknownType(_))));
}

#[test]
fn log_csv_round_trips() {
    let inst = Instance::new(3, [("A", 4, 2), ("B", 3, 1)]).unwrap();
    let seq = InjectionSequence::from_ids(&inst, &["B", "A", "A"]).unwrap();
    let b = decode(&inst, &seq).unwrap();
    let log = synthesize_log("job-x", &inst, &b, 100.0, 20.0, &[]);
    let back = TimestampLog::from_csv(&log.to_csv()).unwrap();
    assert_eq!(back, log);
    assert!(back.events.iter().any(|e| e.mould_id == "A#2"));
}

#[test]
fn corpus_directory_round_trips() {
    let profile = CorpusProfile {
        job_count: 5,
        demand_mean: 40.0,
        ..CorpusProfile::default()
    };
    let jobs = generate_corpus(&profile).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let corpus = CorpusDir::new(dir.path());
    corpus.write(Some(&profile), &jobs).unwrap();
    assert_eq!(corpus.manifest().unwrap().profile, Some(profile));
    assert_eq!(corpus.read().unwrap(), jobs);
}
