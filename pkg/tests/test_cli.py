import io

from retold.cli import run
from conftest import FIXTURES, fixture_text

FOX = str(FIXTURES / "fox_and_grapes.story")
LION = str(FIXTURES / "lion_and_boar.story")
GOLDEN = str(FIXTURES / "fox_and_grapes.golden.txt")
REFERENCE = str(FIXTURES / "fox_and_grapes.reference.txt")


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate_ok():
    code, out, err = invoke("validate", FOX)
    assert code == 0
    assert "ok" in out


def test_validate_failure_exits_1(tmp_path):
    bad = tmp_path / "bad.story"
    bad.write_text('story x "X"\n\nentities\n  fox character fox\n\n'
                   'timeline\n  0:\n    obtain obtain(Agent=fox)\n')
    code, out, err = invoke("validate", str(bad))
    assert code == 1
    assert "mandatory role Theme unbound" in out


def test_parse_error_exits_2(tmp_path):
    bad = tmp_path / "broken.story"
    bad.write_text("not a story\n")
    code, out, err = invoke("validate", str(bad))
    assert code == 2
    assert "retold:" in err


def test_missing_file_exits_2():
    code, out, err = invoke("validate", "no/such/file.story")
    assert code == 2


def test_generate_neutral_matches_golden_text():
    code, out, err = invoke("generate", FOX)
    assert code == 0
    assert out.strip() == fixture_text("fox_and_grapes.golden.txt").strip()


def test_generate_emit_dsynts_appends_trees():
    code, out, err = invoke("generate", FOX, "--emit-dsynts")
    assert code == 0
    assert "<document>" in out
    assert out.index("The group of grapes") < out.index("<document>")


def test_generate_styled_output_differs_and_is_deterministic():
    code1, out1, _ = invoke("generate", FOX, "--voice", "LAID-BACK", "--seed", "7")
    code2, out2, _ = invoke("generate", FOX, "--voice", "LAID-BACK", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.strip() != fixture_text("fox_and_grapes.golden.txt").strip()


def test_generate_unknown_voice_exits_2():
    code, out, err = invoke("generate", FOX, "--voice", "BOGUS")
    assert code == 2


def test_generate_voice_file(tmp_path):
    voice = tmp_path / "loud.voice"
    voice.write_text("voice LOUD\nexclamation: 1.0\n")
    code, out, err = invoke("generate", FOX, "--voice", str(voice))
    assert code == 0
    assert out.count("!") == 8


def test_generate_output_file(tmp_path):
    target = tmp_path / "story.txt"
    code, out, err = invoke("generate", FOX, "--output", str(target))
    assert code == 0
    assert target.read_text().strip() == fixture_text("fox_and_grapes.golden.txt").strip()


def test_eval_prints_scores():
    code, out, err = invoke("eval", "--candidate", GOLDEN, "--reference", REFERENCE)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("levenshtein: ")
    assert lines[1].startswith("bleu: 0.")


def test_eval_json_report(tmp_path):
    target = tmp_path / "report.json"
    code, out, err = invoke("eval", "--candidate", GOLDEN, "--reference", REFERENCE,
                            "--json", str(target))
    assert code == 0
    import json
    payload = json.loads(target.read_text())
    assert payload["aggregate"]["levenshtein"]["mean"] == float(
        out.splitlines()[0].split(": ")[1])


def test_eval_no_stem_flag():
    code, out, _ = invoke("eval", "--candidate", GOLDEN, "--reference", GOLDEN, "--no-stem")
    assert code == 0
    assert "levenshtein: 0" in out


def test_pipeline_generates_and_scores():
    code, out, err = invoke("pipeline", LION, "--reference",
                            str(FIXTURES / "lion_and_boar.golden.txt"))
    assert code == 0
    assert "The air was hot." in out
    assert "levenshtein: 0" in out
    assert "bleu: 1.0000" in out


def test_identical_invocations_are_byte_identical():
    first = invoke("pipeline", FOX, "--reference", REFERENCE)
    second = invoke("pipeline", FOX, "--reference", REFERENCE)
    assert first == second


def test_generate_on_invalid_story_exits_1(tmp_path):
    bad = tmp_path / "bad.story"
    bad.write_text('story x "X"\n\nentities\n  fox character fox\n\n'
                   'timeline\n  0:\n    obtain obtain(Agent=fox)\n')
    code, out, err = invoke("generate", str(bad))
    assert code == 1
    assert "unbound" in err


def test_generate_output_file_with_emitted_trees(tmp_path):
    target = tmp_path / "story.txt"
    code, out, err = invoke("generate", FOX, "--output", str(target), "--emit-dsynts")
    assert code == 0
    assert "<document>" in out
    assert target.read_text().startswith("The group of grapes")
