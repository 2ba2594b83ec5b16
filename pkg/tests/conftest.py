"""Collects per-criterion acceptance results and prints one line per criterion."""

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, label: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[n]
        ok = all(c[1] for c in checks)
        failing = [f"{label} ({detail})" for label, good, detail in checks if not good]
        summary = "; ".join(failing) if failing else "; ".join(f"{label}: {detail}" for label, _, detail in checks)
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {summary}")
