"""Walk through the type-1 family: resolve, lift, contract, base change.

Run with ``python demos/genus_two_c_fibres.py``.
"""
from fibsurf.fibre import fibre_report
from fibsurf.pipeline import PresetRun, run_pipeline
from fibsurf.presets import type1
from fibsurf.report import emit_dot
from fibsurf.resolution import canonical_resolve, describe_step


def main():
    preset = type1()
    print("branch:", preset.form, "bidegree", preset.bidegree)
    tree = canonical_resolve(preset.branch(), [(0, 0)])
    for step in tree.steps:
        print(" ", describe_step(step))

    rep = fibre_report(canonical_resolve(preset.branch()), (0, 1))
    print(f"fibre over [0:1]: genus {rep.genus}, {rep.contractions} contraction, gcd {rep.predicates.gcd}, "
          f"min multiplicity {rep.predicates.min}")
    print(emit_dot(rep.contracted))

    for n in range(1, 5):
        s = run_pipeline(PresetRun("type1", base_change=n)).report["summary"]
        print(f"n={n}: chi={s['chi']} K2={s['K2']} c2={s['c2']} {s['classification'].value}")


if __name__ == "__main__":
    main()
