"""Command-line interface tests (invoked in-process through main)."""

import numpy as np

from invpat import Model, RasterImage, save_model, save_pnm
from invpat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestUsage:
    def test_no_args_is_usage_error(self, capsys):
        code, _, _ = run(capsys, )
        assert code == 1

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 1

    def test_classify_requires_model_flag(self, capsys):
        code, _, err = run(capsys, "classify", "data.csv")
        assert code == 1 and "--model" in err

    def test_missing_data_file_is_data_error(self, capsys, tmp_path):
        model = tmp_path / "m.ipat"
        save_model(Model(2, 16, 0), model)
        code, _, _ = run(capsys, "classify", str(tmp_path / "nope.csv"),
                         "--model", str(model))
        assert code == 2

    def test_missing_model_file_is_data_error(self, capsys, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("1,2\n")
        code, _, _ = run(capsys, "classify", str(data),
                         "--model", str(tmp_path / "nope.ipat"))
        assert code == 2


class TestTrainClassify:
    def test_roundtrip(self, capsys, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("3 3\n3 3\n9 9\n")
        model = tmp_path / "m.ipat"
        code, out, _ = run(capsys, "train", str(data), "--x", "16",
                           "--model", str(model))
        assert code == 0 and "trained N=2" in out

        hist = tmp_path / "h.txt"
        code, out, _ = run(capsys, "classify", str(data),
                           "--model", str(model), "--out", str(hist))
        assert code == 0
        assert "0 class=1" in out and "2 class=2" in out
        assert hist.read_text() == "1 2\n2 1\n"

    def test_r_pct_conversion(self, capsys, tmp_path):
        data = tmp_path / "d.csv"
        data.write_text("0 0\n")
        code, out, _ = run(capsys, "train", str(data), "--x", "256",
                           "--r-pct", "10")
        assert code == 0
        assert '"r_pct": 10' in out  # config echoed in the report header

    def test_unrecognized_row(self, capsys, tmp_path):
        train = tmp_path / "t.csv"
        train.write_text("3 3\n")
        test = tmp_path / "q.csv"
        test.write_text("9 9\n")
        model = tmp_path / "m.ipat"
        run(capsys, "train", str(train), "--x", "16", "--model", str(model))
        code, out, _ = run(capsys, "classify", str(test), "--model", str(model))
        assert code == 0 and "0 unrecognized" in out


class TestPredict:
    def test_param_flow(self, capsys, tmp_path):
        schema = tmp_path / "s.json"
        schema.write_text(
            '{"columns": [{"name": "a", "role": "feature"},'
            ' {"name": "t", "role": "parameter-t"}]}')
        data = tmp_path / "d.csv"
        data.write_text("0,7\n0,7\n1,9\n")
        model = tmp_path / "p.ipat"
        code, out, _ = run(capsys, "train", str(data), "--schema", str(schema),
                           "--x", "4", "--model", str(model))
        assert code == 0 and "param-index rows=3" in out
        code, out, _ = run(capsys, "predict", str(data), "--model", str(model))
        assert code == 0 and "0 t=7" in out


class TestDetectSegment:
    def test_detect_scene(self, capsys, tmp_path):
        rng = np.random.default_rng(149)
        palette = np.array([[10, 10, 10], [30, 30, 30], [50, 50, 50]], dtype=np.uint8)
        bg = palette[rng.integers(0, 3, size=(32, 32))]
        frame = bg.copy()
        frame[8:20, 8:20] = (220, 40, 40)
        bg_path, fr_path = tmp_path / "bg.ppm", tmp_path / "fr.ppm"
        save_pnm(RasterImage(bg), bg_path)
        save_pnm(RasterImage(frame), fr_path)
        code, out, _ = run(capsys, "detect", str(bg_path), str(fr_path),
                           str(bg_path), str(fr_path),
                           "--r", "10", "--freq-threshold", "3")
        assert code == 0
        lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
        assert lines[0].endswith("no-object")
        assert "object=1" in lines[1]

    def test_segment(self, capsys, tmp_path):
        from invpat import LabelTable

        m = Model(3, 256, 0)
        table = LabelTable()
        table.attach(m.insert_class((0, 0, 200)), "water")
        m.labels = table
        model = tmp_path / "m.ipat"
        save_model(m, model)
        px = np.zeros((2, 2, 3), dtype=np.uint8)
        px[0, 0] = (0, 0, 200)
        image = tmp_path / "i.ppm"
        save_pnm(RasterImage(px), image)
        out_path = tmp_path / "labels.ppm"
        code, out, _ = run(capsys, "segment", str(image), "--model", str(model),
                           "--out", str(out_path))
        assert code == 0
        assert "water 1" in out and "unlabeled 3" in out
        assert out_path.exists()
        legend = (str(out_path) + ".legend.txt")
        assert "water" in open(legend).read()


class TestBench:
    def test_small_sweep(self, capsys, tmp_path):
        out_path = tmp_path / "bench.txt"
        code, out, _ = run(capsys, "bench", "--n-list", "50,100", "--k", "4",
                           "--x", "32", "--seed", "1", "--out", str(out_path))
        assert code == 0
        assert "R^2" in out and out_path.exists()
