"""JSON run records and their independent re-verification."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .construction import (
    ConstructionState,
    FreeDigitPolicy,
    forced_positions,
    generate_point,
    order_bounds_hold,
    parse_schedule,
)
from .exact_arith import (
    Word,
    contains,
    find_inner_cylinder,
    min_inner_order,
    ternary_prefix_of_cylinder,
    word_to_cylinder,
)
from .words import gap_bound

RECORD_FIELDS = ("m", "depth", "policy", "schedule", "t", "rho", "p", "binary", "ternary", "items")


@dataclass
class RunRecord:
    m: int
    depth: int
    policy: str
    schedule: str
    t: list
    rho: list
    p: list
    binary: str
    ternary: str
    items: list = field(default_factory=list)  # [{"index", "w", "v", "gap_bound"}]

    @classmethod
    def from_state(cls, state: ConstructionState) -> "RunRecord":
        policy = state.policy.descriptor if state.policy is not None else "zero"
        return cls(
            m=state.m,
            depth=state.k,
            policy=policy,
            schedule=state.schedule.label,
            t=list(state.t),
            rho=list(state.rho),
            p=list(state.p),
            binary=state.binary.digits,
            ternary=state.ternary.digits,
            items=[
                {"index": it.index, "w": it.w.digits, "v": it.v.digits, "gap_bound": it.gap_bound}
                for it in state.items
            ],
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("record must be a JSON object")
        missing = [f for f in RECORD_FIELDS if f not in data]
        if missing:
            raise ValueError(f"record is missing fields: {', '.join(missing)}")
        extra = set(data) - set(RECORD_FIELDS)
        if extra:
            raise ValueError(f"unknown record fields: {', '.join(sorted(extra))}")
        rec = cls(**data)
        rec._check_shape()
        return rec

    def _check_shape(self) -> None:
        if not isinstance(self.m, int) or not isinstance(self.depth, int):
            raise ValueError("m and depth must be integers")
        for name in ("t", "rho", "p", "items"):
            if len(getattr(self, name)) != self.depth:
                raise ValueError(f"{name} must have {self.depth} entries")
        Word(2, self.binary)
        Word(3, self.ternary)


def verify_record(rec: RunRecord, deep: bool = False) -> dict:
    """Re-check a record from its digits alone.

    ``chain``: the three nested cylinders of every step, the forced block
    digits and the leftmost-cylinder choices. ``bounds``: the orders and the
    two-sided estimate on ``t_k``. ``witnesses``: ``w_k`` and ``v_k`` at their
    predicted shifts. With ``deep`` the whole run is regenerated and compared.
    """
    details = []

    def check(kind, ok, what):
        details.append({"check": kind, "ok": bool(ok), "what": what})

    schedule = parse_schedule(rec.m, rec.schedule)
    binary, ternary = rec.binary, rec.ternary
    check("chain", len(binary) == (rec.t[-1] if rec.t else 0), "binary prefix has t_K digits")
    last_v = len(rec.items[-1]["v"]) if rec.items else 0
    check("chain", len(ternary) == (rec.rho[-1] + last_v if rec.rho else 0), "ternary prefix has rho_K+|v_K| digits")
    if binary:
        forced = ternary_prefix_of_cylinder(word_to_cylinder(Word(2, binary)), len(ternary))
        check("chain", forced is not None and forced.digits == ternary, "ternary prefix forced by binary prefix")

    t_prev = 0
    for k in range(1, rec.depth + 1):
        item = rec.items[k - 1]
        w, v = item["w"], item["v"]
        t_k, rho_k, p_k = rec.t[k - 1], rec.rho[k - 1], rec.p[k - 1]
        n_k = schedule.n(k)
        expected = schedule.item(k)
        check("chain", (w, v) == (expected.w.digits, expected.v.digits), f"step {k}: enumeration item")
        outer_len = t_prev + n_k + len(w)
        mid_len = rho_k + len(v)
        if len(binary) < t_k or len(ternary) < mid_len or outer_len > t_k:
            check("chain", False, f"step {k}: prefixes too short")
            break
        block = binary[t_prev : t_prev + n_k]
        check(
            "chain",
            all(block[pos - 1] == "1" for pos in forced_positions(rec.m, n_k // rec.m)),
            f"step {k}: forced block digits",
        )
        outer = word_to_cylinder(Word(2, binary[:outer_len]))
        mid = word_to_cylinder(Word(3, ternary[:mid_len]))
        inner = word_to_cylinder(Word(2, binary[:t_k]))
        eps = word_to_cylinder(Word(3, ternary[:rho_k]))
        check("chain", contains(outer, mid), f"step {k}: [eps_k v_k]_3 inside [eta_(k-1) block w_k]_2")
        check("chain", contains(mid, inner), f"step {k}: [eta_k]_2 inside [eps_k v_k]_3")
        check("chain", find_inner_cylinder(outer, 3, rho_k) == eps, f"step {k}: eps_k is the leftmost choice")
        check("chain", find_inner_cylinder(mid, 2, t_k) == inner, f"step {k}: eta_k is the leftmost choice")

        check("bounds", rho_k == min_inner_order(outer_len, 2, 3, 3), f"step {k}: rho_k")
        check("bounds", t_k == min_inner_order(mid_len, 3, 2, 2), f"step {k}: t_k")
        check("bounds", order_bounds_hold(t_prev, n_k, len(w), len(v), t_k), f"step {k}: two-sided estimate on t_k")
        check("bounds", p_k == t_k - t_prev - n_k, f"step {k}: p_k = t_k - t_(k-1) - n_k")
        g_k = gap_bound(Word(2, w), Word(3, v))
        check("bounds", g_k == item["gap_bound"], f"step {k}: recorded gap bound")
        check("bounds", p_k <= g_k, f"step {k}: p_k <= gap bound")

        pos2 = t_prev + n_k
        check("witnesses", binary[pos2 : pos2 + len(w)] == w, f"step {k}: w_k after binary digit {pos2}")
        check("witnesses", ternary[rho_k : rho_k + len(v)] == v, f"step {k}: v_k after ternary digit {rho_k}")
        t_prev = t_k

    if deep:
        try:
            fresh = RunRecord.from_state(
                generate_point(rec.m, rec.depth, FreeDigitPolicy.parse(rec.policy), schedule)
            )
            same = fresh == rec
        except ValueError:
            same = False
        check("chain", same, "regenerated run matches record")

    def all_ok(kind):
        return all(d["ok"] for d in details if d["check"] == kind)

    return {
        "chain_ok": all_ok("chain"),
        "bounds_ok": all_ok("bounds"),
        "witnesses_ok": all_ok("witnesses"),
        "details": details,
    }

