"""Generate instances/pr01.txt: 48 customers, 4 depots, 2 vehicles per depot.

The classic benchmark file of that name is not redistributable here, so this
script synthesizes a stand-in of identical shape: same header, fleet bounds
D=500 / Q=200, coordinates in an 80x80 box, and soft time windows sampled
around one concrete zero-tardiness plan. That hidden plan guarantees the
tardiness objective can be driven to zero while its deliberately non-spatial
visiting order keeps distance and tardiness in genuine conflict.
"""

import math
import random
from pathlib import Path

SEED = 72026
OUT = Path(__file__).resolve().parent.parent / "instances" / "pr01.txt"


def main() -> None:
    rng = random.Random(SEED)

    depots = []
    for i, (dx, dy) in enumerate([(-20, -20), (20, -20), (-20, 20), (20, 20)]):
        depots.append(
            {
                "id": 49 + i,
                "x": round(dx + rng.uniform(-4, 4), 2),
                "y": round(dy + rng.uniform(-4, 4), 2),
            }
        )

    customers = []
    for cid in range(1, 49):
        customers.append(
            {
                "id": cid,
                "x": round(rng.uniform(-40, 40), 2),
                "y": round(rng.uniform(-40, 40), 2),
                "service": 1,
                "demand": rng.randint(1, 25),
            }
        )

    # Hidden feasible plan: 8 routes of 6 customers in a random (not
    # distance-friendly) order; each window is placed around the arrival
    # time that plan produces, so zero total tardiness is attainable.
    order = list(range(48))
    rng.shuffle(order)
    for k in range(8):
        route = order[k * 6 : (k + 1) * 6]
        depot = depots[k // 2]
        px, py = depot["x"], depot["y"]
        clock = 0.0
        for idx in route:
            c = customers[idx]
            clock += math.hypot(c["x"] - px, c["y"] - py)
            arrival = clock
            width = rng.uniform(40, 120)
            lead = rng.uniform(5, width - 5)
            tw_open = max(0.0, arrival - lead)
            tw_close = tw_open + width
            c["tw_open"] = int(tw_open)
            c["tw_close"] = math.ceil(tw_close)
            clock = arrival + c["service"]
            px, py = c["x"], c["y"]
        clock += math.hypot(depot["x"] - px, depot["y"] - py)
        if clock > 500:
            raise SystemExit(f"reference route {k} too long: {clock:.1f} > 500")

    lines = ["6 2 48 4"]
    lines += ["500 200"] * 4
    for c in customers:
        lines.append(
            f"{c['id']} {c['x']} {c['y']} {c['service']} {c['demand']} "
            f"1 1 1 {c['tw_open']} {c['tw_close']}"
        )
    for d in depots:
        lines.append(f"{d['id']} {d['x']} {d['y']} 0 0 1 1 1 0 1000")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
