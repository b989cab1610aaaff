import json

import pytest

from cwgen.cli import main

from conftest import FIXTURES


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pairs.jsonl"
    rows = [
        {"clue": "موتي", "answer": "حتفي"},
        {"clue": "موتي", "answer": "حتفي"},
        {"clue": "جميل مبعثرة", "answer": "ل م ي ج"},
        {"clue": "نصف نادر", "answer": "در"},
    ]
    path.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows),
        encoding="utf-8",
    )
    return path


class TestNormalize:
    def test_dedupes_and_filters(self, capsys, tmp_path, pair_file):
        out_file = tmp_path / "clean.jsonl"
        code, out, _ = run(
            capsys, "normalize", "--in", str(pair_file), "--out", str(out_file)
        )
        assert code == 0
        summary = json.loads(out)
        assert summary == {"loaded": 4, "skipped": 0, "kept": 2, "removed": 2}
        kept = out_file.read_text(encoding="utf-8").strip().splitlines()
        assert len(kept) == 2

    def test_missing_file_errors(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "normalize", "--in", str(tmp_path / "nope.jsonl"),
            "--out", str(tmp_path / "o.jsonl"),
        )
        assert code == 1
        assert err.startswith("error: FileNotFound")
        assert err.count("\n") == 1


class TestStats:
    def test_histogram_matches_hand_count(self, capsys, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(
            '{"clue":"موتي","answer":"حتفي"}\n{"clue":"نصف نادر","answer":"در"}\n',
            encoding="utf-8",
        )
        code, out, _ = run(capsys, "stats", "--in", str(path))
        assert code == 0
        stats = json.loads(out)
        assert stats["total_pairs"] == 2
        assert stats["length_histogram"]["2"] == {
            "all_pairs": 1, "unique_answers": 1, "unique_pairs": 1,
        }
        assert stats["length_histogram"]["4"] == {
            "all_pairs": 1, "unique_answers": 1, "unique_pairs": 1,
        }


class TestFromText:
    def test_atom_transcript_matches_golden(self, capsys, tmp_path):
        out_file = tmp_path / "pairs.jsonl"
        code, _, _ = run(
            capsys,
            "from-text",
            "--in", str(FIXTURES / "atom_paragraph.txt"),
            "--lang", "ar",
            "--transcript", str(FIXTURES / "atom_transcript.jsonl"),
            "--out", str(out_file),
        )
        assert code == 0
        golden = (FIXTURES / "atom_pairs_golden.jsonl").read_bytes()
        assert out_file.read_bytes() == golden

    def test_report_file_written(self, capsys, tmp_path):
        report_file = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            "from-text",
            "--in", str(FIXTURES / "atom_paragraph.txt"),
            "--lang", "ar",
            "--transcript", str(FIXTURES / "atom_transcript.jsonl"),
            "--out", str(tmp_path / "pairs.jsonl"),
            "--report", str(report_file),
        )
        assert code == 0
        assert json.loads(out)["passed"] == 10
        assert json.loads(report_file.read_text(encoding="utf-8"))["input_count"] == 10


class TestFromKeywords:
    def test_heuristic_run(self, capsys, tmp_path):
        from cwgen import pipeline_keyword as pk
        from cwgen.gateway import CompletionResponse, Transcript, user_request

        transcript = Transcript()
        transcript.record(
            user_request(pk.DEFAULT_CLUE_MODEL, f"قوة{pk.DEFAULT_SEPARATOR}"),
            CompletionResponse("قدرة"),
        )
        tpath = tmp_path / "t.jsonl"
        transcript.save(tpath)
        answers = tmp_path / "answers.txt"
        answers.write_text("قوة\n", encoding="utf-8")
        out_file = tmp_path / "out.jsonl"

        code, out, _ = run(
            capsys,
            "from-keywords",
            "--answers", str(answers),
            "--transcript", str(tpath),
            "--out", str(out_file),
        )
        assert code == 0
        row = json.loads(out_file.read_text(encoding="utf-8"))
        assert row["clue"] == "قدرة"
        assert row["verdict"]["acceptable"] is True


@pytest.fixture
def crossable_pairs(tmp_path):
    path = tmp_path / "words.jsonl"
    rows = [
        {"id": "w1", "clue": "الأول", "answer": "ابت"},
        {"id": "w2", "clue": "الثاني", "answer": "بجد"},
        {"id": "w3", "clue": "الثالث", "answer": "تهن"},
    ]
    path.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows),
        encoding="utf-8",
    )
    return path


def layout_args(pair_file, out_file, seed=7, extra=()):
    return [
        "layout",
        "--pairs", str(pair_file),
        "--rows", "7", "--cols", "7",
        "--min-answers", "2",
        "--max-seconds", "5",
        "--seed", str(seed),
        "--out", str(out_file),
        *extra,
    ]


class TestLayoutCommand:
    def test_byte_identical_reruns(self, capsys, tmp_path, crossable_pairs):
        out1, out2 = tmp_path / "l1.json", tmp_path / "l2.json"
        assert run(capsys, *layout_args(crossable_pairs, out1))[0] == 0
        assert run(capsys, *layout_args(crossable_pairs, out2))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_jobs_flag_deterministic(self, capsys, tmp_path, crossable_pairs):
        out1, out2 = tmp_path / "j1.json", tmp_path / "j2.json"
        assert run(capsys, *layout_args(crossable_pairs, out1, extra=["--jobs", "2"]))[0] == 0
        assert run(capsys, *layout_args(crossable_pairs, out2, extra=["--jobs", "2"]))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_insufficient_answers_error_line(self, capsys, tmp_path):
        path = tmp_path / "one.jsonl"
        path.write_text('{"clue":"x","answer":"اب"}\n', encoding="utf-8")
        code, _, err = run(capsys, *layout_args(path, tmp_path / "o.json"))
        assert code == 1
        assert err.startswith("error: InsufficientAnswers:")


class TestRenderCommand:
    def test_text_svg_json_formats(self, capsys, tmp_path, crossable_pairs):
        layout_file = tmp_path / "layout.json"
        run(capsys, *layout_args(crossable_pairs, layout_file))

        text_file = tmp_path / "grid.txt"
        code, _, _ = run(
            capsys, "render", "--layout", str(layout_file),
            "--format", "text", "--reveal", "--out", str(text_file),
        )
        assert code == 0
        assert text_file.read_text(encoding="utf-8").count("\n") == 7

        svg_file = tmp_path / "grid.svg"
        code, _, _ = run(
            capsys, "render", "--layout", str(layout_file),
            "--format", "svg", "--out", str(svg_file),
        )
        assert code == 0
        assert svg_file.read_text(encoding="utf-8").startswith("<?xml")

        json_file = tmp_path / "puzzle.json"
        code, _, _ = run(
            capsys, "render", "--layout", str(layout_file),
            "--format", "json", "--pairs", str(crossable_pairs),
            "--out", str(json_file),
        )
        assert code == 0
        puzzle = json.loads(json_file.read_text(encoding="utf-8"))
        assert puzzle["rows"] == 7

    def test_json_without_pairs_fails(self, capsys, tmp_path, crossable_pairs):
        layout_file = tmp_path / "layout.json"
        run(capsys, *layout_args(crossable_pairs, layout_file))
        code, _, err = run(
            capsys, "render", "--layout", str(layout_file), "--format", "json"
        )
        assert code == 1
        assert err.startswith("error:")
