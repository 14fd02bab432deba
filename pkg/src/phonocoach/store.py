"""Durable session store: analyses, issued exercises, performance, feedback.

Single JSONL append-log. Every mutation appends one line and updates the
in-memory view; opening a store replays the log. Entries are never
superseded, so compaction just rewrites the file atomically (dropping a torn
trailing line if a crash left one).

Progress records carry a logical clock: a per-patient sequence number that
increases by one per recorded performance. Wall-clock stamps are deliberately
absent so that equal inputs produce byte-equal store files.

Concurrency: one process-wide lock serializes all writes (append + state
swap). Patient state lives in immutable snapshots replaced wholesale on
write, so readers never need the lock.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, replace
from typing import Any, Iterable

from .analysis import AnalysisResult, result_from_document
from .categories import DisorderCategory
from .errors import NotFoundError, SchemaError, StoreError, ValidationError
from .jsonutil import canonical_dumps
from .therapy import Exercise, TherapyHistory, exercise_from_document

DEFAULT_SUCCESS_CUTOFF = 0.70
LOG_VERSION = 1


@dataclass(frozen=True)
class PerformanceEntry:
    exercise_id: str
    sentence: str
    category: DisorderCategory
    a_base: float
    a_c: float
    seq: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "exercise_id": self.exercise_id,
            "sentence": self.sentence,
            "category": self.category.value,
            "a_base": self.a_base,
            "a_c": self.a_c,
            "seq": self.seq,
        }


@dataclass(frozen=True)
class PatientHistory:
    """Immutable snapshot of one patient's record."""

    patient_id: str
    successes: tuple[PerformanceEntry, ...] = ()
    failures: tuple[PerformanceEntry, ...] = ()
    progress: tuple[PerformanceEntry, ...] = ()

    def to_document(self) -> dict[str, Any]:
        return {
            "patient_id": self.patient_id,
            "successes": [e.to_dict() for e in self.successes],
            "failures": [e.to_dict() for e in self.failures],
            "progress": [e.to_dict() for e in self.progress],
        }

    def therapy_history(self) -> TherapyHistory:
        """Sentence-level view consumed by exercise personalization."""

        def sentences(entries: Iterable[PerformanceEntry]) -> tuple[str, ...]:
            seen: dict[str, None] = {}
            for e in entries:
                seen.setdefault(e.sentence, None)
            return tuple(seen)

        return TherapyHistory(sentences(self.successes), sentences(self.failures))

    def last_base_accuracy(self, category: DisorderCategory) -> float | None:
        for entry in reversed(self.progress):
            if entry.category is category:
                return entry.a_base
        return None


@dataclass(frozen=True)
class StoredAnalysis:
    analysis_id: str
    patient_id: str
    result: AnalysisResult
    document: dict[str, Any]


@dataclass(frozen=True)
class StoredExercise:
    exercise_id: str
    analysis_id: str
    patient_id: str
    exercise: Exercise
    document: dict[str, Any]


class SessionStore:
    def __init__(self, path: str, success_cutoff: float = DEFAULT_SUCCESS_CUTOFF):
        if not 0.0 < success_cutoff <= 1.0:
            raise ValidationError("success_cutoff must lie in (0, 1]")
        self._path = path
        self._cutoff = success_cutoff
        self._lock = threading.Lock()
        self._analyses: dict[str, StoredAnalysis] = {}
        self._exercises: dict[str, StoredExercise] = {}
        self._patients: dict[str, PatientHistory] = {}
        self._feedback: dict[str, list[dict[str, Any]]] = {}
        self._journal: list[dict[str, Any]] = []
        self._fh = None
        tail_entry, truncate_to = self._replay()
        if truncate_to is not None:
            # Cut the unterminated final line so new appends start clean.
            try:
                os.truncate(self._path, truncate_to)
            except OSError as exc:
                raise StoreError(f"cannot repair store {self._path!r}: {exc}") from exc
        try:
            self._fh = open(self._path, "a", encoding="utf-8")
        except OSError as exc:
            raise StoreError(f"cannot open store {self._path!r}: {exc}") from exc
        if tail_entry is not None:
            # The tail parsed fine and only lacked its newline; restore it.
            self._write_line(tail_entry)
            self._apply(tail_entry, source=f"{self._path}:<tail>")

    # -- log plumbing ------------------------------------------------------

    def _replay(self) -> tuple[dict[str, Any] | None, int | None]:
        """Load the log. Returns (parseable unterminated tail entry or None,
        byte offset to truncate to or None)."""
        try:
            with open(self._path, "rb") as fh:
                raw = fh.read()
        except FileNotFoundError:
            return None, None
        except OSError as exc:
            raise StoreError(f"cannot read store {self._path!r}: {exc}") from exc
        lines = raw.split(b"\n")
        tail = None
        if lines and lines[-1] == b"":
            lines.pop()
        elif lines:
            tail = lines.pop()  # interrupted append; everything before it is intact
        for lineno, line in enumerate(lines, 1):
            if not line:
                continue
            try:
                entry = json.loads(line.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise SchemaError(f"{self._path}:{lineno}: corrupt store line: {exc}") from exc
            self._apply(entry, source=f"{self._path}:{lineno}")
        if tail is None:
            return None, None
        keep = len(raw) - len(tail)
        try:
            return json.loads(tail.decode("utf-8")), keep
        except (UnicodeDecodeError, json.JSONDecodeError):
            return None, keep  # torn write, drop it

    def _write_line(self, entry: dict[str, Any]) -> None:
        try:
            self._fh.write(canonical_dumps(entry) + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())
        except OSError as exc:
            raise StoreError(f"cannot append to store {self._path!r}: {exc}") from exc

    def _append(self, entry: dict[str, Any]) -> None:
        self._write_line(entry)
        self._journal.append(entry)

    def _apply(self, entry: dict[str, Any], source: str) -> None:
        """Replay one journal line into memory (live writes bypass this)."""
        try:
            op = entry["op"]
            if op == "analysis":
                self._apply_analysis(entry["patient"], entry["doc"])
            elif op == "exercises":
                self._apply_exercises(entry["patient"], entry["analysis"], entry["docs"])
            elif op == "performance":
                self._apply_performance(
                    entry["patient"], entry["exercise"], entry["a_base"], entry["a_c"], entry["seq"]
                )
            elif op == "feedback":
                self._apply_feedback(entry["analysis"], entry["doc"])
            else:
                raise SchemaError(f"{source}: unknown store op {op!r}")
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"{source}: malformed store entry: {exc}") from exc
        self._journal.append(entry)

    # -- state transitions (shared by replay and live writes) --------------

    def _apply_analysis(self, patient_id: str, doc: dict[str, Any]) -> None:
        result = result_from_document(doc)
        self._analyses[result.analysis_id] = StoredAnalysis(
            result.analysis_id, patient_id, result, doc
        )
        self._patients.setdefault(patient_id, PatientHistory(patient_id))

    def _apply_exercises(self, patient_id: str, analysis_id: str, docs: list[dict]) -> None:
        for doc in docs:
            ex = exercise_from_document(doc)
            self._exercises[ex.exercise_id] = StoredExercise(
                ex.exercise_id, analysis_id, patient_id, ex, doc
            )

    def _apply_performance(
        self, patient_id: str, exercise_id: str, a_base: float, a_c: float, seq: int
    ) -> None:
        stored = self._exercises[exercise_id]
        entry = PerformanceEntry(
            exercise_id, stored.exercise.sentence, stored.exercise.category, a_base, a_c, seq
        )
        hist = self._patients.get(patient_id, PatientHistory(patient_id))
        if a_c >= self._cutoff:
            hist = replace(hist, successes=hist.successes + (entry,))
        else:
            hist = replace(hist, failures=hist.failures + (entry,))
        self._patients[patient_id] = replace(hist, progress=hist.progress + (entry,))

    def _apply_feedback(self, analysis_id: str, doc: dict[str, Any]) -> None:
        self._feedback.setdefault(analysis_id, []).append(doc)

    # -- public API --------------------------------------------------------

    def put_analysis(self, result: AnalysisResult, patient_id: str = "anonymous") -> str:
        """Persist an analysis. Re-putting identical content is a no-op
        (ids are content-derived, so equal documents share an id)."""
        doc = result.to_document()
        with self._lock:
            existing = self._analyses.get(result.analysis_id)
            if existing is not None:
                if existing.document == doc and existing.patient_id == patient_id:
                    return result.analysis_id
                raise ValidationError(
                    f"analysis id {result.analysis_id} already stored with different content"
                )
            entry = {"v": LOG_VERSION, "op": "analysis", "patient": patient_id, "doc": doc}
            self._append(entry)
            self._apply_analysis(patient_id, doc)
        return result.analysis_id

    def get_analysis(self, analysis_id: str) -> StoredAnalysis:
        found = self._analyses.get(analysis_id)
        if found is None:
            raise NotFoundError(f"unknown analysis {analysis_id!r}")
        return found

    def record_exercises(self, analysis_id: str, exercises: Iterable[Exercise]) -> None:
        docs = [ex.to_document() for ex in exercises]
        with self._lock:
            stored = self._analyses.get(analysis_id)
            if stored is None:
                raise NotFoundError(f"unknown analysis {analysis_id!r}")
            if not docs:
                return
            entry = {
                "v": LOG_VERSION,
                "op": "exercises",
                "patient": stored.patient_id,
                "analysis": analysis_id,
                "docs": docs,
            }
            self._append(entry)
            self._apply_exercises(stored.patient_id, analysis_id, docs)

    def get_exercise(self, exercise_id: str) -> StoredExercise:
        found = self._exercises.get(exercise_id)
        if found is None:
            raise NotFoundError(f"unknown exercise {exercise_id!r}")
        return found

    def record_performance(
        self, patient_id: str, exercise_id: str, a_base: float, a_c: float
    ) -> PatientHistory:
        """Route one scored exercise into successes or failures and append a
        progress point. The exercise must have been issued to this patient."""
        for name, value in (("a_base", a_base), ("a_c", a_c)):
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {value}")
        with self._lock:
            stored = self._exercises.get(exercise_id)
            if stored is None:
                raise NotFoundError(f"unknown exercise {exercise_id!r}")
            if stored.patient_id != patient_id:
                raise ValidationError(
                    f"exercise {exercise_id} was issued to {stored.patient_id!r}, not {patient_id!r}"
                )
            hist = self._patients.get(patient_id, PatientHistory(patient_id))
            seq = len(hist.progress) + 1
            entry = {
                "v": LOG_VERSION,
                "op": "performance",
                "patient": patient_id,
                "exercise": exercise_id,
                "a_base": a_base,
                "a_c": a_c,
                "seq": seq,
            }
            self._append(entry)
            self._apply_performance(patient_id, exercise_id, a_base, a_c, seq)
            return self._patients[patient_id]

    def record_feedback(self, analysis_id: str, document: dict[str, Any]) -> None:
        with self._lock:
            if analysis_id not in self._analyses:
                raise NotFoundError(f"unknown analysis {analysis_id!r}")
            entry = {"v": LOG_VERSION, "op": "feedback", "analysis": analysis_id, "doc": document}
            self._append(entry)
            self._apply_feedback(analysis_id, document)

    def history(self, patient_id: str) -> PatientHistory:
        return self._patients.get(patient_id, PatientHistory(patient_id))

    def progress_series(
        self, patient_id: str, category: DisorderCategory | None = None
    ) -> list[tuple[int, float]]:
        """(seq, corrected accuracy) points in recording order, optionally
        restricted to one category. Unknown patients yield []."""
        hist = self._patients.get(patient_id)
        if hist is None:
            return []
        return [
            (e.seq, e.a_c)
            for e in hist.progress
            if category is None or e.category is category
        ]

    def analyses_for(self, patient_id: str) -> list[StoredAnalysis]:
        return [s for s in self._analyses.values() if s.patient_id == patient_id]

    def exercises_for(self, analysis_id: str) -> list[StoredExercise]:
        return [s for s in self._exercises.values() if s.analysis_id == analysis_id]

    def feedback_for(self, analysis_id: str) -> list[dict[str, Any]]:
        return list(self._feedback.get(analysis_id, ()))

    @property
    def patient_ids(self) -> list[str]:
        return sorted(self._patients)

    def export(self) -> dict[str, Any]:
        """Whole-store document; canonical-dumps to stable bytes."""
        return {
            "version": LOG_VERSION,
            "analyses": {
                aid: {"patient_id": s.patient_id, "document": s.document}
                for aid, s in self._analyses.items()
            },
            "exercises": {
                xid: {
                    "patient_id": s.patient_id,
                    "analysis_id": s.analysis_id,
                    "document": s.document,
                }
                for xid, s in self._exercises.items()
            },
            "patients": {pid: h.to_document() for pid, h in self._patients.items()},
            "feedback": dict(self._feedback),
        }

    def compact(self) -> None:
        """Atomically rewrite the log from the in-memory journal. Entries are
        never superseded, so this only normalizes the file (e.g. drops a torn
        trailing line inherited from a crash)."""
        tmp = self._path + ".tmp"
        with self._lock:
            try:
                with open(tmp, "w", encoding="utf-8") as fh:
                    for entry in self._journal:
                        fh.write(canonical_dumps(entry) + "\n")
                    fh.flush()
                    os.fsync(fh.fileno())
                self._fh.close()
                os.replace(tmp, self._path)
                self._fh = open(self._path, "a", encoding="utf-8")
            except OSError as exc:
                raise StoreError(f"compaction of {self._path!r} failed: {exc}") from exc

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __enter__(self) -> "SessionStore":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
