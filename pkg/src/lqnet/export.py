"""History CSV export and import.

One row per (replication, group, period, agent).  Floats are written with
``repr`` so a history survives a write/read cycle bit for bit and two exports
of the same run are byte-identical.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from pathlib import Path
from typing import Iterable

import numpy as np

from .game import RoundOutcome, realize_network
from .sim import PeriodRecord, SimConfig, SimHistory

HISTORY_COLUMNS = (
    "replication", "group", "period", "agent", "effort", "links_initiated", "degree",
    "payoff", "effort_benefit", "effort_cost", "link_cost_paid", "link_benefit_received", "rank",
)


def history_rows(histories: Iterable[SimHistory]):
    for h in histories:
        for g, records in enumerate(h.groups):
            for rec in records:
                out = rec.outcome
                deg = rec.network.sum(axis=1)
                for i in range(rec.efforts.size):
                    targets = np.flatnonzero(rec.intentions[i])
                    yield (h.replication, g, rec.period, i, repr(float(rec.efforts[i])),
                           ";".join(str(j) for j in targets), int(deg[i]),
                           repr(float(out.payoff[i])), repr(float(out.effort_benefit[i])),
                           repr(float(out.effort_cost[i])), repr(float(out.link_cost_paid[i])),
                           repr(float(out.link_benefit_received[i])), int(out.ranks[i]))


def write_history_csv(histories: Iterable[SimHistory], dest) -> None:
    """Write histories to a path or an open text file."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="") as fh:
            write_history_csv(histories, fh)
        return
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(HISTORY_COLUMNS)
    writer.writerows(history_rows(histories))


def history_csv_text(histories: Iterable[SimHistory]) -> str:
    buf = io.StringIO()
    write_history_csv(histories, buf)
    return buf.getvalue()


def read_history_csv(src, config: SimConfig) -> list[SimHistory]:
    """Rebuild histories from a CSV export.  ``config`` supplies the group size."""
    if isinstance(src, (str, Path)):
        with open(src, newline="") as fh:
            return read_history_csv(fh, config)
    reader = csv.DictReader(src)
    missing = set(HISTORY_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"history CSV lacks columns: {', '.join(sorted(missing))}")
    n = config.game.n_players
    cells: dict = defaultdict(dict)
    for row in reader:
        key = (int(row["replication"]), int(row["group"]), int(row["period"]))
        cells[key][int(row["agent"])] = row

    by_rep: dict[int, dict[int, list[PeriodRecord]]] = defaultdict(lambda: defaultdict(list))
    for (rep, grp, period) in sorted(cells):
        rows = cells[(rep, grp, period)]
        if sorted(rows) != list(range(n)):
            raise ValueError(f"rep {rep} group {grp} period {period}: expected agents 0..{n - 1}")
        intentions = np.zeros((n, n), dtype=bool)
        cols = {c: np.zeros(n) for c in ("effort", "payoff", "effort_benefit", "effort_cost",
                                         "link_cost_paid", "link_benefit_received")}
        ranks = np.zeros(n, dtype=int)
        for i, row in rows.items():
            for tok in filter(None, row["links_initiated"].split(";")):
                intentions[i, int(tok)] = True
            for c in cols:
                cols[c][i] = float(row[c])
            ranks[i] = int(row["rank"])
        outcome = RoundOutcome(cols["payoff"], cols["effort_benefit"], cols["effort_cost"],
                               cols["link_cost_paid"], cols["link_benefit_received"], ranks)
        records = by_rep[rep][grp]
        cumulative = cols["payoff"] if not records else records[-1].cumulative_payoff + cols["payoff"]
        records.append(PeriodRecord(period, intentions, realize_network(intentions),
                                    cols["effort"], outcome, cumulative))

    return [SimHistory(config, rep, [groups[g] for g in sorted(groups)])
            for rep, groups in sorted(by_rep.items())]
