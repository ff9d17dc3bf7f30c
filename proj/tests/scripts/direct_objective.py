"""Term-by-term objective of the identity assignment for an instance JSON."""

import json
import sys


def main(path):
    with open(path) as f:
        inst = json.load(f)
    w = inst["weights"]
    c = inst["costs"]
    total = 0.0
    for i, rider in enumerate(inst["riders"]):
        total += w["alpha"] * c["pickup_dist"][i][i]
        total += w["beta"] * c["deliver_time"][i][i]
        total += w["gamma"] * c["wait_time"][i][i]
        total += w["delta"] * (rider["completed_orders"] + 1) ** 2
    print(repr(total))


if __name__ == "__main__":
    main(sys.argv[1])
