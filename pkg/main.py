"""
Simple example script classifying a matrix and probing the tau class.

Classifies a small GKK tau-matrix, runs a short Varga-margin search over
order-4 tau-matrices and writes both reports to output/.
"""

from pathlib import Path

from gkk_tau.classify import classify
from gkk_tau.io import emit_report, write_output
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.search import MatrixClass, Objective, SearchConfig
from gkk_tau.search import extremal_search


def main():
    A = Matrix([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]])
    print(f"Classifying matrix of order {A.n}...")
    report = classify(A)
    held = [label for label, ok in report.labels.items() if ok]
    print(f"✓ Classes: {', '.join(held)}")

    print("\nSearching order-4 tau-matrices for the smallest Varga margin...")
    config = SearchConfig(n=4, seed=7, iterations=2000, restarts=2)
    result = extremal_search(MatrixClass.TAU, Objective.MIN_VARGA_MARGIN, config)
    print(f"✓ Best margin {result.best_objective:.6f} (restart {result.restart})")

    output_dir = Path(__file__).parent / "output"
    output_dir.mkdir(parents=True, exist_ok=True)
    write_output(emit_report(report.to_dict(), "json"), str(output_dir / "classification.json"))
    write_output(emit_report(result.to_dict(), "json"), str(output_dir / "tau_varga_search.json"))
    print(f"\n✓ Reports written to: {output_dir}")

    return report, result


if __name__ == "__main__":
    report, result = main()
