#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/.

Usage: make_fixtures.py <path to neusv binary>

Writes the prompt suite, one spec file per suite prompt, raw confidence
traces for two synthetic generators, labeled detector samples, the bundled
calibration profile, annotations equal to the computed scores and the frozen
golden report. Output is deterministic.
"""

import json
import random
import re
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "data"
WINDOWS = 8
WINDOW_SIZE = 3
SWITCH = 4
MODELS = {"model_a": 0.85, "model_b": 0.55}

SUITE = [
    ("nature_basic_snow", "nature", "basic", "Snow falling until it covers the ground", {
        "object_existence": '("snow") U ("ground")',
        "object_action_alignment": '("snow_falls" U "ground_is_covered")',
        "spatial_relationship": 'F ("snow_covers_ground")',
        "overall_consistency": '("snow_falling" U "it_covers_the_ground")'},
     {"hold": ["snow", "snow_falls", "snow_falling"],
      "after": ["ground_is_covered", "snow_covers_ground", "it_covers_the_ground"],
      "always": ["ground"]}),
    ("nature_intermediate_sun", "nature", "intermediate",
     "The sun shining until the clouds gather, and then rain begins to fall", {
        "object_existence": '("sun_shining" U "clouds_gather") & F ("rain_begins_to_fall")',
        "object_action_alignment": '("sun_shines" U "clouds_gather") & F ("rain_falls")',
        "spatial_relationship": 'G ("sun_over_horizon" & "dew_on_grass")',
        "overall_consistency": '("sun_shining" U "clouds_gather") & F ("rain_begins_to_fall")'},
     {"hold": ["sun_shining", "sun_shines", "sun_over_horizon"],
      "after": ["clouds_gather"],
      "end": ["rain_begins_to_fall", "rain_falls"],
      "always": ["dew_on_grass"]}),
    ("activities_basic_dog_barking", "human_and_animal_activities", "basic",
     "A dog barking until someone throws a ball", {
        "object_existence": '("dog") U ("ball")',
        "object_action_alignment": '("dog_barks" U "someone_throws_ball")',
        "overall_consistency": '("dog_barking" U "someone_throws_a_ball")'},
     {"hold": ["dog_barks", "dog_barking"],
      "after": ["ball", "someone_throws_ball", "someone_throws_a_ball"],
      "always": ["dog"]}),
    ("activities_advanced_dog_digging", "human_and_animal_activities", "advanced",
     "A dog digging in the backyard, until its owner arrives, and then they play fetch together", {
        "object_existence": '("dog" & "backyard") U ("owner" & "ball")',
        "object_action_alignment": '("dog_digs_in_backyard" U "owner_arrives") & F ("dog_plays_fetch_with_owner")',
        "spatial_relationship": '("dog_in_backyard") U ("owner_arrives")',
        "overall_consistency": '("dog_digging_in_the_backyard" U "its_owner_arrives") & F ("they_play_fetch_together")'},
     {"hold": ["dog_digs_in_backyard", "dog_digging_in_the_backyard"],
      "after": ["owner", "owner_arrives", "its_owner_arrives"],
      "end": ["ball", "dog_plays_fetch_with_owner", "they_play_fetch_together"],
      "always": ["dog", "backyard", "dog_in_backyard"]}),
    ("objects_basic_lamp", "object_interactions", "basic", "A lamp glowing until it is turned off", {
        "object_existence": '("lamp") U (!"lamp")',
        "object_action_alignment": '("lamp_glows" U "lamp_is_turned_off")',
        "overall_consistency": '("lamp_glowing" U "it_is_turned_off")'},
     {"hold": ["lamp", "lamp_glows", "lamp_glowing"],
      "after": ["lamp_is_turned_off", "it_is_turned_off"]}),
    ("objects_intermediate_drone", "object_interactions", "intermediate",
     "A drone hovering in the air until it reaches its next waypoint, and then it continues to fly", {
        "object_existence": '("drone") U ("waypoint")',
        "object_action_alignment": '("drone_hovers_in_air" U "drone_reaches_next_waypoint") & F ("drone_continues_to_fly")',
        "spatial_relationship": '("drone_in_air") U ("drone_reaches_waypoint")',
        "overall_consistency": '("drone_hovering_in_air" U "drone_reaches_next_waypoint") & F ("drone_continues_to_fly")'},
     {"hold": ["drone_hovers_in_air", "drone_hovering_in_air"],
      "after": ["waypoint", "drone_reaches_next_waypoint", "drone_reaches_waypoint"],
      "end": ["drone_continues_to_fly"],
      "always": ["drone", "drone_in_air"]}),
    ("driving_basic_stop_sign", "driving_data", "basic", "The vehicle moving forward until it reaches a stop sign", {
        "object_existence": '"vehicle" U "stop_sign"',
        "object_action_alignment": '("vehicle_moves" U "vehicle_reaches_stop_sign")',
        "spatial_relationship": '("vehicle_moving_forward" U "vehicle_at_stop_sign")',
        "overall_consistency": '("vehicle_moving_forward" U "vehicle_reaches_a_stop_sign")'},
     {"hold": ["vehicle_moves", "vehicle_moving_forward"],
      "after": ["stop_sign", "vehicle_reaches_stop_sign", "vehicle_at_stop_sign", "vehicle_reaches_a_stop_sign"],
      "always": ["vehicle"]}),
    ("driving_advanced_construction", "driving_data", "advanced",
     "A car driving through the city streets, until it encounters a construction zone, "
     "and then it reroutes to an alternate path", {
        "object_existence": '("car" & "streets") U ("construction_zone" & "path")',
        "object_action_alignment": '("car_drives_through_city_streets" U "car_encounters_construction_zone") & F ("car_reroutes_to_alternate_path")',
        "spatial_relationship": '("car_on_city_streets") U ("car_at_construction_zone")',
        "overall_consistency": '("car_driving_through_city_streets" U "it_encounters_a_construction_zone") & F ("it_reroutes_to_an_alternate_path")'},
     {"hold": ["car_drives_through_city_streets", "car_driving_through_city_streets", "car_on_city_streets"],
      "after": ["construction_zone", "car_encounters_construction_zone", "car_at_construction_zone",
                "it_encounters_a_construction_zone"],
      "end": ["path", "car_reroutes_to_alternate_path", "it_reroutes_to_an_alternate_path"],
      "always": ["car", "streets"]}),
]


def atoms(spec):
    out = []
    for a in re.findall(r'"([^"]+)"', spec):
        if a not in out:
            out.append(a)
    return out


def truth(profile, j):
    if profile == "hold":
        return j < SWITCH
    if profile == "after":
        return j >= SWITCH
    if profile == "end":
        return j >= SWITCH + 2
    return True


def confidence(rng, t, quality):
    if rng.random() < (1 - quality) * 0.35:
        t = not t
    lo, hi = (0.5 + 0.4 * quality, 1.0) if t else (0.0, 0.5 - 0.4 * quality)
    return round(rng.uniform(lo, hi), 3)


def write_json(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def run(binary, *args):
    return subprocess.run([binary, *args], check=True, cwd=ROOT, capture_output=True, text=True).stdout


def main():
    binary = str(Path(sys.argv[1]).resolve())
    fixtures = DATA / "fixtures"
    suite_lines = []
    samples = ["score,label"]
    for pid, theme, complexity, prompt, specs, profiles in SUITE:
        suite_lines.append(json.dumps({"id": pid, "theme": theme, "complexity": complexity, "prompt": prompt},
                                      sort_keys=True))
        modes = {}
        props = []
        for mode, spec in specs.items():
            ps = atoms(spec)
            modes[mode] = {"propositions": [{"id": a, "display": a.replace("_", " ")} for a in ps], "formula": spec}
            props += [a for a in ps if a not in props]
        write_json(fixtures / "specs" / f"{pid}.json", {"prompt": prompt, "modes": modes})
        kind = {a: k for k, names in profiles.items() for a in names}
        for model, quality in MODELS.items():
            rng = random.Random(f"{pid}/{model}")
            rows = []
            for j in range(WINDOWS):
                row = []
                for a in props:
                    t = truth(kind.get(a, "always"), j)
                    c = confidence(rng, t, quality)
                    row.append(c)
                    samples.append(f"{c},{1 if t else 0}")
                rows.append(row)
            write_json(fixtures / "traces" / f"{pid}__{model}.json",
                       {"propositions": props, "window_size": WINDOW_SIZE, "calibrated": False, "windows": rows})
    (DATA / "suite").mkdir(parents=True, exist_ok=True)
    (DATA / "suite" / "prompts.jsonl").write_text("\n".join(suite_lines) + "\n")
    (fixtures / "detector_samples.csv").write_text("\n".join(samples) + "\n")

    gamma = json.loads(run(binary, "calibrate-threshold", "--samples", "data/fixtures/detector_samples.csv"))["gamma_fp"]
    scores = []
    for pid, *_ in SUITE:
        for model in MODELS:
            out = fixtures / "scores" / f"{pid}__{model}.json"
            out.parent.mkdir(parents=True, exist_ok=True)
            run(binary, "score", "--trace", f"data/fixtures/traces/{pid}__{model}.json",
                "--spec-file", f"data/fixtures/specs/{pid}.json", "--gamma", repr(gamma), "-o", str(out))
            scores.append(str(out.relative_to(ROOT)))
    run(binary, "build-ecdf", "--version-tag", "bundled-1", "--gamma", repr(gamma),
        "--provenance", "synthetic fixture traces in data/fixtures/traces, threshold from detector_samples.csv",
        "--scores", *scores, "-o", "data/profiles/bundled.json")

    with tempfile.TemporaryDirectory() as tmp:
        lines = ["video_id,alignment_score"]
        for pid, _, _, _, specs, _ in SUITE:
            for model in MODELS:
                out = Path(tmp) / f"{pid}__{model}.json"
                run(binary, "evaluate", "--spec-file", f"data/fixtures/specs/{pid}.json",
                    "--trace", f"data/fixtures/traces/{pid}__{model}.json", "--profile", "data/profiles/bundled.json",
                    "--modes", *specs.keys(), "--timestamp", "1970-01-01T00:00:00Z",
                    "--video-id", f"{pid}__{model}", "--prompt-id", pid, "--model", model, "-o", str(out))
                score = json.loads(out.read_text())["final_score"]
                lines.append(f"{pid}__{model},{1 + 4 * score!r}")
        (fixtures / "annotations_synthetic.csv").write_text("\n".join(lines) + "\n")

    golden = ROOT / "tests" / "golden" / "bundled_report.json"
    golden.parent.mkdir(parents=True, exist_ok=True)
    run(binary, "evaluate", "--spec-file", "data/fixtures/specs/nature_basic_snow.json",
        "--trace", "data/fixtures/traces/nature_basic_snow__model_a.json",
        "--profile", "data/profiles/bundled.json", "--timestamp", "1970-01-01T00:00:00Z",
        "-o", str(golden.relative_to(ROOT)))


if __name__ == "__main__":
    main()
