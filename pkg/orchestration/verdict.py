"""
Verdicts are a pure function of trace classifications and the declared expectation.
"""

from typing import Any, Dict, List, Sequence, Tuple

from mathtools.measures import LimitTrace, TraceClassification

CONSISTENT = "consistent-with-theorem"
COUNTEREXAMPLE = "counterexample-behavior-confirmed"
INCONCLUSIVE = "inconclusive"
VERDICTS = (CONSISTENT, COUNTEREXAMPLE, INCONCLUSIVE)


def judge_pair(
    first: TraceClassification,
    second: TraceClassification,
    expected: str,
    tolerance: float,
) -> Tuple[str, Dict[str, Any]]:
    """
    Verdict for one matched pair: `first` is the kernel-side trace, `second`
    the trace of the measure (or of the ball averages) it is compared with.
    """
    kinds = (first.kind, second.kind)
    details: Dict[str, Any] = {"kinds": list(kinds)}

    if kinds == ("converged", "converged"):
        gap = abs(complex(first.limit) - complex(second.limit))
        details["limit_gap"] = gap
        return (CONSISTENT if gap <= tolerance else INCONCLUSIVE), details

    # the kernel-side limit exists while the measure-side one oscillates
    if expected == COUNTEREXAMPLE and kinds == ("converged", "oscillatory"):
        details["amplitude"] = second.amplitude
        return COUNTEREXAMPLE, details

    return INCONCLUSIVE, details


def judge_verdict(
    traces: Sequence[LimitTrace],
    expected: str,
    tolerance: float,
    failed: Sequence[Dict[str, Any]] = (),
) -> Tuple[str, Dict[str, Any]]:
    """
    Traces come in matched pairs (0,1), (2,3), ...; the run is given a
    verdict only when every pair reaches the same one.
    """
    if failed:
        return INCONCLUSIVE, {"reason": f"{len(failed)} failed trace(s)", "pairs": []}
    if not traces or len(traces) % 2:
        return INCONCLUSIVE, {"reason": f"expected matched pairs of traces, got {len(traces)}", "pairs": []}

    pairs: List[Dict[str, Any]] = []
    verdicts = set()
    for first, second in zip(traces[0::2], traces[1::2]):
        verdict, details = judge_pair(first.classification, second.classification, expected, tolerance)
        details.update({"traces": [first.name, second.name], "verdict": verdict})
        pairs.append(details)
        verdicts.add(verdict)

    verdict = verdicts.pop() if len(verdicts) == 1 else INCONCLUSIVE
    return verdict, {"pairs": pairs}
