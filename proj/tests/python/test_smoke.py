import math
import os
import subprocess

import pytest

import cosim

PAIRS = (
    "word1\tword2\tcontext1\tcontext2\tword1_context1\tword2_context1\tword1_context2\tword2_context2\n"
    "bank\tshore\tThe bank of the shore\tA shore by the bank\tbank\tshore\tbank\tshore\n"
    "stone\ttree\tA stone under the tree\tThe tree fell on a stone\tstone\ttree\tstone\ttree\n"
    "river\tboat\tThe boat drifts down the river\tA river and an old boat\triver\tboat\triver\tboat\n"
)


def test_metrics():
    assert cosim.cosine_similarity([3, 4], [4, 3]) == pytest.approx(0.96, abs=1e-15)
    assert cosim.euclidean_distance([0, 0], [3, 4]) == 5.0
    assert cosim.as_similarity("euclidean", 5.0) == -5.0
    assert cosim.mean_pool([[0, 0], [2, 4]]) == [1.0, 2.0]
    with pytest.raises(cosim.DegenerateVectorError):
        cosim.cosine_similarity([0, 0], [1, 0])
    with pytest.raises(cosim.DimensionError):
        cosim.euclidean_distance([1], [1, 2])
    with pytest.raises(ValueError):
        cosim.mean_pool([])


def test_alignment():
    assert cosim.locate_occurrence("Bank near bank", "bank") == (10, 14)
    assert cosim.locate_occurrence("Pöytä kirja", "kirja") == (6, 11)
    with pytest.raises(cosim.WordNotFoundError):
        cosim.locate_occurrence("the shore", "bank")


def test_dataset():
    records = cosim.parse_records(PAIRS, "en")
    assert [r["id"] for r in records] == ["0", "1", "2"]
    assert records[0]["context2"] == "A shore by the bank"
    report = cosim.validate(PAIRS, "en")
    assert (report["row_count"], report["accepted"], report["rejected"]) == (3, 3, 0)
    with pytest.raises(cosim.FormatError):
        cosim.parse_records("a\tb\tc\n")
    with pytest.raises(cosim.EncodingError):
        cosim.parse_records(b"bank\xff\tb\tc\td\te\tf\tg\th\n")


def test_blend_and_scoring():
    assert cosim.blend_changes([0.5, 0.3], ["euclidean", "cosine"], [1, 0]) == 0.5
    assert cosim.blend_changes([0.5, 0.3], ["euclidean", "cosine"], [0.5, 0.5]) == pytest.approx(0.4)
    with pytest.raises(cosim.InvalidWeightsError):
        cosim.blend_changes([0.5, 0.3], ["euclidean", "cosine"], [0.7, 0.7])

    rows = cosim.score_synthetic(PAIRS, seed=7, dim=16, standardize=False, weights=[0.5, 0.5])
    assert len(rows) == 3
    again = cosim.score_synthetic(PAIRS, seed=7, dim=16, standardize=False, weights=[0.5, 0.5])
    assert rows == again
    for row in rows:
        euc = row["metrics"]["euclidean"]
        cos = row["metrics"]["cosine"]
        assert euc["change"] == euc["sc1"] - euc["sc2"]
        assert min(euc["change"], cos["change"]) <= row["blend"] <= max(euc["change"], cos["change"])


def test_correlations_and_tuning():
    assert cosim.pearson([1, 2, 3], [5, 7, 9]) == pytest.approx(1.0, abs=1e-12)
    assert cosim.uncentered_pearson([1, 0], [1, 1]) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert cosim.spearman([1, 2, 2, 3], [10, 20, 20, 40]) == pytest.approx(1.0, abs=1e-12)
    assert cosim.correlate("uncentered", [1, 0], [0, 1]) == 0.0
    with pytest.raises(cosim.ZeroVarianceError):
        cosim.pearson([1, 2, 3], [4, 4, 4])
    with pytest.raises(cosim.ConfigError):
        cosim.correlate("kendall", [1, 2], [1, 2])

    assert cosim.grid_points(2, 0.5) == [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]
    assert len(cosim.grid_points(3, 0.5)) == 6
    with pytest.raises(cosim.ConfigError):
        cosim.grid_points(2, 0.3)
    gold = [0.3, -1.2, 0.8, 0.1, -0.4]
    result = cosim.grid_search([gold, [1, 0, -1, 2, 0.5]], gold, step=0.1)
    assert result["best_weights"] == [1.0, 0.0]
    assert len(result["trace"]) == 11


def test_run_cli(tmp_path):
    data = tmp_path / "pairs.tsv"
    data.write_text(PAIRS, encoding="utf-8")
    code, out, err = cosim.run_cli(["validate", "--data", str(data)])
    assert code == 0
    assert out.startswith("3 records")

    code, out, err = cosim.run_cli(["score", "--data", str(data), "--seed", "7"])
    assert code == 0
    assert out.splitlines()[0].endswith("change_blend")
    assert "scored 3 of 3 records" in err

    code, _, err = cosim.run_cli(["score", "--data", str(data), "--weights", "0.6,0.3"])
    assert code == 2
    assert "InvalidWeightsError" in err


@pytest.mark.skipif(not os.environ.get("COSIM_BINARY"), reason="COSIM_BINARY not set")
def test_binary_matches_module(tmp_path):
    data = tmp_path / "pairs.tsv"
    data.write_text(PAIRS, encoding="utf-8")
    proc = subprocess.run(
        [os.environ["COSIM_BINARY"], "score", "--data", str(data), "--seed", "7"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    _, out, _ = cosim.run_cli(["score", "--data", str(data), "--seed", "7"])
    assert proc.stdout == out
