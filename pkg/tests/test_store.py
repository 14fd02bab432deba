"""Session store: durability, replay, routing, repair, concurrency."""

import threading

import pytest

from phonocoach.analysis import analyze
from phonocoach.categories import DisorderCategory
from phonocoach.errors import NotFoundError, SchemaError, ValidationError
from phonocoach.ingest import parse_recognizer_output
from phonocoach.store import SessionStore
from phonocoach.therapy import plan_exercises


@pytest.fixture(scope="module")
def sample(fixture_doc, configs, bank, tconfig, corpus):
    analysis = analyze(parse_recognizer_output(fixture_doc), configs, bank=bank)
    exercises, _ = plan_exercises(analysis, configs=configs, tconfig=tconfig, corpus=corpus)
    return analysis, exercises


@pytest.fixture()
def store(tmp_path):
    with SessionStore(str(tmp_path / "sessions.jsonl")) as s:
        yield s


def _seed_store(store, sample, patient="p1"):
    analysis, exercises = sample
    store.put_analysis(analysis, patient)
    store.record_exercises(analysis.analysis_id, exercises)
    return analysis, exercises


def test_analysis_round_trip(store, sample):
    analysis, _ = _seed_store(store, sample)
    got = store.get_analysis(analysis.analysis_id)
    assert got.patient_id == "p1"
    assert got.document == analysis.to_document()
    assert got.result == analysis or got.result.to_document() == analysis.to_document()


def test_exercise_round_trip(store, sample):
    analysis, exercises = _seed_store(store, sample)
    for ex in exercises:
        got = store.get_exercise(ex.exercise_id)
        assert got.analysis_id == analysis.analysis_id
        assert got.document == ex.to_document()
    listed = store.exercises_for(analysis.analysis_id)
    assert {s.exercise_id for s in listed} == {e.exercise_id for e in exercises}


def test_unknown_ids_raise(store, sample):
    with pytest.raises(NotFoundError):
        store.get_analysis("an-0000000000000000")
    with pytest.raises(NotFoundError):
        store.get_exercise("ex-0000000000000000")
    with pytest.raises(NotFoundError):
        store.record_exercises("an-0000000000000000", [])
    with pytest.raises(NotFoundError):
        store.record_performance("p1", "ex-0000000000000000", 0.5, 0.5)
    analysis, _ = sample
    with pytest.raises(NotFoundError):
        store.record_feedback(analysis.analysis_id, {})  # analysis not stored yet


def test_reput_identical_is_noop(store, sample):
    analysis, _ = sample
    a = store.put_analysis(analysis, "p1")
    b = store.put_analysis(analysis, "p1")
    assert a == b == analysis.analysis_id
    assert len(store.analyses_for("p1")) == 1


def test_reput_conflicting_patient_rejected(store, sample):
    analysis, _ = sample
    store.put_analysis(analysis, "p1")
    with pytest.raises(ValidationError, match="different"):
        store.put_analysis(analysis, "p2")


def test_performance_routing_at_cutoff(store, sample):
    analysis, exercises = _seed_store(store, sample)
    ex = exercises[0]
    # exactly at the 0.70 cutoff counts as a success (inclusive)
    hist = store.record_performance("p1", ex.exercise_id, 0.7, 0.70)
    assert len(hist.successes) == 1 and len(hist.failures) == 0
    hist = store.record_performance("p1", ex.exercise_id, 0.6, 0.699999)
    assert len(hist.successes) == 1 and len(hist.failures) == 1
    assert [e.seq for e in hist.progress] == [1, 2]


def test_performance_requires_issued_exercise(store, sample):
    analysis, exercises = _seed_store(store, sample)
    with pytest.raises(ValidationError, match="issued"):
        store.record_performance("intruder", exercises[0].exercise_id, 0.5, 0.5)
    with pytest.raises(ValidationError):
        store.record_performance("p1", exercises[0].exercise_id, 1.5, 0.5)


def test_progress_series_filters_by_category(store, sample):
    analysis, exercises = _seed_store(store, sample)
    for i, ex in enumerate(exercises):
        store.record_performance("p1", ex.exercise_id, 0.5, 0.5 + 0.1 * i)
    everything = store.progress_series("p1")
    assert [seq for seq, _ in everything] == [1, 2]
    only = store.progress_series("p1", exercises[0].category)
    assert len(only) == 1 and only[0][0] == 1
    assert store.progress_series("nobody") == []


def test_therapy_history_splits_by_outcome(store, sample):
    analysis, exercises = _seed_store(store, sample)
    store.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
    store.record_performance("p1", exercises[1].exercise_id, 0.2, 0.2)
    th = store.history("p1").therapy_history()
    assert th.successes == (exercises[0].sentence,)
    assert th.failures == (exercises[1].sentence,)


def test_last_base_accuracy(store, sample):
    analysis, exercises = _seed_store(store, sample)
    ex = exercises[0]
    assert store.history("p1").last_base_accuracy(ex.category) is None
    store.record_performance("p1", ex.exercise_id, 0.4, 0.4)
    store.record_performance("p1", ex.exercise_id, 0.8, 0.8)
    assert store.history("p1").last_base_accuracy(ex.category) == 0.8
    assert store.history("p1").last_base_accuracy(exercises[1].category) is None


def test_feedback_recorded_per_analysis(store, sample):
    analysis, _ = _seed_store(store, sample)
    doc = {"analysis_id": analysis.analysis_id, "overall": "Simple practice"}
    store.record_feedback(analysis.analysis_id, doc)
    store.record_feedback(analysis.analysis_id, doc)
    assert store.feedback_for(analysis.analysis_id) == [doc, doc]
    assert store.feedback_for("an-ffffffffffffffff") == []


def test_replay_restores_everything(tmp_path, sample):
    path = str(tmp_path / "s.jsonl")
    analysis, exercises = sample
    with SessionStore(path) as store:
        _seed_store(store, sample)
        store.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
        store.record_feedback(analysis.analysis_id, {"overall": "Simple practice"})
        before = store.export()
    with SessionStore(path) as reopened:
        assert reopened.export() == before
        assert reopened.patient_ids == ["p1"]


def test_history_snapshots_immutable(store, sample):
    analysis, exercises = _seed_store(store, sample)
    snap = store.history("p1")
    store.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
    assert snap.progress == ()  # old snapshot untouched
    assert len(store.history("p1").progress) == 1


def test_torn_tail_dropped_and_repaired(tmp_path, sample):
    path = str(tmp_path / "s.jsonl")
    with SessionStore(path) as store:
        analysis, exercises = _seed_store(store, sample)
        intact = store.export()
    with open(path, "ab") as fh:
        fh.write(b'{"v": 1, "op": "performance", "patient"')  # torn mid-write
    with SessionStore(path) as repaired:
        assert repaired.export() == intact
        # new writes must append cleanly after the repair
        repaired.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
    with SessionStore(path) as again:
        assert len(again.history("p1").progress) == 1


def test_unterminated_parseable_tail_is_kept(tmp_path, sample):
    path = str(tmp_path / "s.jsonl")
    with SessionStore(path) as store:
        analysis, exercises = _seed_store(store, sample)
        store.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
        with_perf = store.export()
    raw = open(path, "rb").read()
    assert raw.endswith(b"\n")
    open(path, "wb").write(raw[:-1])  # crash exactly before the newline
    with SessionStore(path) as reopened:
        assert reopened.export() == with_perf
    with SessionStore(path) as final:  # file must be fully healed by now
        assert final.export() == with_perf


def test_corrupt_interior_line_rejected(tmp_path, sample):
    path = str(tmp_path / "s.jsonl")
    with SessionStore(path) as store:
        _seed_store(store, sample)
    raw = open(path, "rb").read()
    open(path, "wb").write(b"garbage not json\n" + raw)
    with pytest.raises(SchemaError, match="corrupt"):
        SessionStore(path)


def test_compaction_preserves_state_and_normalizes(tmp_path, sample):
    path = str(tmp_path / "s.jsonl")
    with SessionStore(path) as store:
        analysis, exercises = _seed_store(store, sample)
        store.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
        before = store.export()
        store.compact()
        assert store.export() == before
        # appends still work after the handle swap
        store.record_performance("p1", exercises[1].exercise_id, 0.3, 0.3)
    with SessionStore(path) as reopened:
        assert len(reopened.history("p1").progress) == 2


def test_export_bytes_stable(tmp_path, sample):
    from phonocoach.jsonutil import canonical_dumps

    p1, p2 = str(tmp_path / "a.jsonl"), str(tmp_path / "b.jsonl")
    for path in (p1, p2):
        with SessionStore(path) as store:
            analysis, exercises = _seed_store(store, sample)
            store.record_performance("p1", exercises[0].exercise_id, 0.9, 0.9)
    assert open(p1, "rb").read() == open(p2, "rb").read()
    with SessionStore(p1) as a, SessionStore(p2) as b:
        assert canonical_dumps(a.export()) == canonical_dumps(b.export())


def test_cutoff_validation(tmp_path):
    with pytest.raises(ValidationError):
        SessionStore(str(tmp_path / "s.jsonl"), success_cutoff=0.0)
    with pytest.raises(ValidationError):
        SessionStore(str(tmp_path / "s.jsonl"), success_cutoff=1.5)


def test_concurrent_writes_serialize(tmp_path, sample):
    path = str(tmp_path / "s.jsonl")
    with SessionStore(path) as store:
        analysis, exercises = _seed_store(store, sample)
        ex = exercises[0]
        errors = []

        def hammer():
            try:
                for _ in range(25):
                    store.record_performance("p1", ex.exercise_id, 0.8, 0.8)
            except Exception as exc:  # noqa: BLE001 - collecting for the assert
                errors.append(exc)

        threads = [threading.Thread(target=hammer) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert errors == []
        progress = store.history("p1").progress
        assert len(progress) == 200
        assert [e.seq for e in progress] == list(range(1, 201))
    with SessionStore(path) as reopened:
        assert len(reopened.history("p1").progress) == 200
