"""Verdict records produced by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, replace

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence"


@dataclass(frozen=True)
class Check:
    check_id: str
    claim: str
    verdict: str
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.verdict in (PASS, EVIDENCE)

    def as_dict(self) -> dict:
        out = {"checkId": self.check_id, "paperRef": self.claim, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def passed(check_id, claim, witness=None) -> Check:
    return Check(check_id, claim, PASS, witness)


def failed(check_id, claim, witness) -> Check:
    return Check(check_id, claim, FAIL, str(witness))


def verdict(check_id, claim, ok: bool, witness=None) -> Check:
    if ok:
        return Check(check_id, claim, PASS)
    return Check(check_id, claim, FAIL, None if witness is None else str(witness))


def compare(check_id, claim, lhs, rhs) -> Check:
    """Exact equality; the witness on failure is the difference lhs - rhs."""
    try:
        if lhs == rhs:
            return Check(check_id, claim, PASS)
        return Check(check_id, claim, FAIL, f"difference: {lhs - rhs}")
    except Exception as exc:  # report, never crash
        return Check(check_id, claim, FAIL, f"{type(exc).__name__}: {exc}")


def guarded(check_id, claim, thunk) -> list:
    """Run ``thunk`` returning Checks; any exception becomes one failed entry."""
    try:
        out = thunk()
    except Exception as exc:
        return [Check(check_id, claim, FAIL, f"{type(exc).__name__}: {exc}")]
    return list(out) if isinstance(out, (list, tuple)) else [out]


def all_ok(checks) -> bool:
    return all(c.ok for c in checks)


def prefixed(prefix, checks) -> list:
    return [replace(c, check_id=f"{prefix}.{c.check_id}") for c in checks]
