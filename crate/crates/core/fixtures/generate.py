#!/usr/bin/env python3
"""Writes the three case-study fixtures.

Criteria follow the task descriptions; every performance value is made up
with a seeded generator. Rerun from this directory to regenerate.
"""

import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
HEADER = "# Constructed performance values (seeded generator, fixtures/generate.py).\n# Only the criteria structure reflects the task description.\n"


def toml_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(float(v)) if isinstance(v, float) else str(v)
    if isinstance(v, str):
        return '"' + v + '"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(toml_value(x) for x in v) + "]"
    raise TypeError(v)


def situation(title, problem, alternatives, criteria, performance, weighting=None):
    out = [HEADER, f'title = "{title}"', f'problem = "{problem}"', 'alternatives_nature = "discrete"']
    if weighting:
        out.append(f'weighting = "{weighting}"')
    out.append("alternatives = " + toml_value(alternatives))
    out.append("performance = [")
    for alt, row in zip(alternatives, performance):
        out.append(f"    {toml_value(row)}, # {alt}")
    out.append("]")
    for c in criteria:
        out.append("")
        out.append("[[criteria]]")
        for key in ("name", "direction", "data_type", "scale", "weight"):
            if key in c:
                out.append(f"{key} = {toml_value(c[key])}")
    return "\n".join(out) + "\n"


def write(case, name, text):
    path = HERE / case / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def tools(rng):
    tool = ["features_and_functions", "integration", "applicability", "extendibility", "team_support",
            "usability", "quality", "performance", "maturity"]
    vendor = ["stability", "support_availability", "training", "availability", "growth_direction"]
    cost = ["acquisition_cost", "implementation_cost", "maintenance_cost"]
    criteria = [dict(name=n, direction="maximize", data_type="quantitative", weight=4.0) for n in tool]
    criteria += [dict(name=n, direction="maximize", data_type="quantitative", weight=3.0) for n in vendor]
    # costs graded 1 (low) to 3 (high)
    criteria += [dict(name=n, direction="minimize", data_type="quantitative", weight=5.0) for n in cost]
    alts = [f"tool_{c}" for c in "abcdefghij"]
    perf = [[float(rng.randint(1, 5)) for _ in tool + vendor] + [float(rng.randint(1, 3)) for _ in cost] for _ in alts]
    write("tools", "situation.toml", situation("Select and acquire tools", "choice", alts, criteria, perf, "direct"))
    write("tools", "usage.toml", '# The engineer wants an easy method and has little MC background.\neasiness_required = "easy"\nskills_available = "weak"\n')
    write("tools", "config.toml", "# Keep the single best tool.\nchoice_k = 1\n")


def risks(rng):
    resources = ["organization", "funding", "people", "time", "business", "technical", "scope",
                 "technological", "external_dependency", "schedule"]
    criteria = [
        dict(name="schedule_deviation", direction="maximize", data_type="quantitative", weight=1.0),
        dict(name="effort_deviation", direction="maximize", data_type="quantitative", weight=1.0),
        dict(name="cost_deviation", direction="maximize", data_type="quantitative", weight=1.0),
        dict(name="likelihood", direction="maximize", data_type="quantitative", weight=2.0),
        dict(name="exposure", direction="maximize", data_type="quantitative", weight=4.0),
        dict(name="magnitude", direction="maximize", data_type="quantitative", weight=2.0),
        dict(name="type", direction="maximize", data_type="qualitative", scale=["indirect", "direct"], weight=1.0),
        # nominal, kept for the record only
        dict(name="resource", direction="maximize", data_type="qualitative", scale=resources, weight=0.0),
    ]
    alts = [f"risk_{i:02}" for i in range(1, 26)]
    perf = []
    for _ in alts:
        schedule = rng.randint(0, 40)  # days
        effort = rng.randint(0, 60)  # person-days
        cost = rng.randint(0, 50) * 1000  # currency units
        likelihood = round(rng.uniform(0.05, 0.9), 2)
        impact = rng.randint(1, 10)
        exposure = round(likelihood * impact, 2)
        magnitude = min(5, 1 + int(exposure // 2))
        perf.append([float(schedule), float(effort), float(cost), likelihood, exposure, float(magnitude),
                     rng.choice(["indirect", "direct"]), rng.choice(resources)])
    write("risks", "situation.toml", situation("Analyze and prioritize risks", "ranking", alts, criteria, perf))
    write("risks", "weights.toml", "# Only tool availability matters when the candidates tie.\ntool = 1.0\n")
    write("risks", "config.toml", """outranking_variant = "complete"

[preferences.schedule_deviation]
shape = "linear"
q = 2.0
p = 10.0

[preferences.effort_deviation]
shape = "linear"
q = 3.0
p = 15.0

[preferences.cost_deviation]
shape = "v_shape"
p = 20000.0

[preferences.likelihood]
shape = "v_shape"
p = 0.3

[preferences.exposure]
shape = "linear"
q = 0.2
p = 2.0
""")


def use_cases(rng):
    criteria = [
        dict(name="benefit", direction="maximize", data_type="qualitative", scale=["useful", "important", "critical"], weight=3.0),
        dict(name="architectural_impact", direction="maximize", data_type="qualitative", scale=["none", "extends", "modifies"], weight=3.0),
        # count of {performance, product availability, component suitability} risks addressed
        dict(name="risks_mitigated", direction="maximize", data_type="quantitative", weight=2.0),
        dict(name="coverage", direction="maximize", data_type="fuzzy", weight=2.0),
        dict(name="demonstration", direction="maximize", data_type="fuzzy", weight=1.0),
    ]
    alts = [f"uc_{i:02}" for i in range(1, 31)]
    perf = []
    for _ in alts:
        m = round(rng.uniform(0.1, 0.9), 2)
        spread = round(rng.uniform(0.0, 0.1), 2)
        coverage = [round(max(0.0, m - spread), 2), m, round(min(1.0, m + spread), 2)]
        d = float(rng.randint(1, 9))
        demonstration = [d - 1.0, d, d + 1.0]
        perf.append([rng.choice(["useful", "important", "critical"]), rng.choice(["none", "extends", "modifies"]),
                     float(rng.randint(0, 3)), coverage, demonstration])
    write("use_cases", "situation.toml", situation("Prioritize use cases", "choice", alts, criteria, perf))
    write("use_cases", "usage.toml", "# The architect wants a method with tool support.\ntool_required = true\n")
    write("use_cases", "config.toml", "# Scenarios to analyze and design in the next iteration.\nchoice_k = 5\n")


if __name__ == "__main__":
    rng = random.Random(20080708)
    tools(rng)
    risks(rng)
    use_cases(rng)
