"""Run every preset and show where the computation disagrees with published values."""
from fibsurf.pipeline import PipelineError, PresetRun, run_pipeline

RUNS = [
    PresetRun("type1"),
    PresetRun("type2"),
    PresetRun("type3"),
    PresetRun("type3", corrected_type3=True),
    PresetRun("type4"),
    PresetRun("type4", h=3),
    PresetRun("even:2"),
    PresetRun("even:4", template_mode=True),
]


def main():
    for run in RUNS:
        defaults = PresetRun(run.preset).to_dict()
        extra = {k: v for k, v in run.to_dict().items() if v != defaults[k]}
        label = run.preset + (f" {extra}" if extra else "")
        try:
            result = run_pipeline(run)
        except PipelineError as exc:
            print(f"{label}\n  refused at {exc.stage}: {exc.message}")
            continue
        print(f"{label}\n  exit {result.exit_code}")
        for note in result.report["paper_notes"]:
            print(f"  published value differs [{note['code']}]: {note['message']}")
        for note in result.report["engine_notes"]:
            print(f"  engine [{note['code']}]: {note['message']}")


if __name__ == "__main__":
    main()
