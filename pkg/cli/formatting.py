"""
cli/formatting.py — Human-readable rendering of JSON reports
The machine format is the report dict itself; this module only lays it out.
"""
from typing import Any, Dict, List

VERDICT_STATUSES = ("holds-on-window", "holds-everywhere", "violated")


def _is_verdict(value: Any) -> bool:
    return isinstance(value, dict) and value.get("status") in VERDICT_STATUSES


def verdict_line(name: str, verdict: Dict) -> str:
    status = verdict["status"]
    line = f"{name}: {'no' if status == 'violated' else 'yes'} ({status})"
    if "constant" in verdict and status != "violated":
        line += f" C={verdict['constant']}"
    witness = verdict.get("witness")
    if witness:
        where = f"i={witness['i']}" if "i" in witness else "({},{})".format(*witness["k"])
        line += f" at {where}: {witness['lhs']} vs {witness['rhs']}"
        if witness.get("condition"):
            line += f"  [{witness['condition']}]"
    return line


def _tree(data: Any, indent: int, out: List[str]):
    pad = "  " * indent
    if isinstance(data, dict):
        for key, value in data.items():
            if _is_verdict(value):
                out.append(pad + verdict_line(key, value))
            elif isinstance(value, (dict, list)) and value:
                out.append(f"{pad}{key}:")
                _tree(value, indent + 1, out)
            else:
                out.append(f"{pad}{key}: {value}")
    elif isinstance(data, list):
        if all(not isinstance(v, (dict, list)) for v in data):
            out.append(pad + "  ".join(str(v) for v in data))
            return
        for value in data:
            if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
                out.append(pad + "  ".join(str(v) for v in value))
            else:
                _tree(value, indent, out)
                if isinstance(value, dict):
                    out.append("")
    else:
        out.append(f"{pad}{data}")


def render_power(report: Dict) -> str:
    out = [f"W^({report['m']},{report['n']}): {report['status']}"]
    if report.get("constants_coincide") is not None:
        out.append(f"constants coincide: {'yes' if report['constants_coincide'] else 'no'}")
    out.append(f"{'(p,q)':<8}{'status':<20}C / witness")
    for r in report["restrictions"]:
        if r["status"] == "violated":
            w = r["witness"]
            detail = f"at ({w['k'][0]},{w['k'][1]}): {w['lhs']} vs {w['rhs']}"
        else:
            detail = f"C={r.get('constant')}"
        out.append(f"({r['p']},{r['q']})".ljust(8) + r["status"].ljust(20) + detail)
    return "\n".join(out)


def render(command: str, report: Dict) -> str:
    if command == "power":
        return render_power(report) + "\n"
    out: List[str] = [f"== {command} =="]
    _tree(report, 0, out)
    return "\n".join(line.rstrip() for line in out).rstrip() + "\n"
