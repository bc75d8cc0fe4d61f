#!/usr/bin/env python3
"""Regenerates the demo course, the profiler questionnaire and the minimal test fixture."""

import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
QUESTIONS_PER_CELL = 5


def distractors(answer, rng, spread):
    out = set()
    while len(out) < 3:
        delta = rng.randint(1, max(2, spread))
        cand = answer + delta if rng.random() < 0.5 else answer - delta
        if cand != answer and cand >= 0:
            out.add(cand)
    return sorted(out)


def numeric_question(prompt, answer, rng, spread):
    wrong = distractors(answer, rng, spread)
    choices = wrong + [answer]
    rng.shuffle(choices)
    return prompt, [str(c) for c in choices], choices.index(answer)


def scale(d):
    return [9, 20, 50, 200, 1000][d - 1]


def gen_digits(d, rng):
    n = rng.randint(10 ** d, 10 ** (d + 1) - 1)
    pos = rng.randint(0, d)
    names = ["ones", "tens", "hundreds", "thousands", "ten-thousands", "hundred-thousands"]
    digit = (n // 10 ** pos) % 10
    prompt = f"What digit is in the {names[pos]} place of {n}?"
    choices = sorted({digit, (digit + 1) % 10, (digit + 3) % 10, (digit + 7) % 10})
    rng.shuffle(choices)
    return prompt, [str(c) for c in choices], choices.index(digit)


def gen_rounding(d, rng):
    n = rng.randint(11, scale(d) * 10)
    to = 10 if d <= 3 else 100
    ans = int((n + to // 2) // to * to)
    choices = sorted({ans, ans + to, max(0, ans - to), ans + 2 * to} - {None})
    while len(choices) < 4:
        choices.append(choices[-1] + to)
    choices = choices[:4]
    if ans not in choices:
        choices[-1] = ans
    rng.shuffle(choices)
    return f"Round {n} to the nearest {to}.", [str(c) for c in choices], choices.index(ans)


def gen_add(carry):
    def gen(d, rng):
        top = scale(d)
        while True:
            a, b = rng.randint(1, top), rng.randint(1, top)
            has_carry = (a % 10) + (b % 10) >= 10
            if has_carry == carry or d == 1:
                break
        return numeric_question(f"{a} + {b} = ?", a + b, rng, 10)
    return gen


def gen_sub(borrow):
    def gen(d, rng):
        top = scale(d)
        while True:
            a, b = sorted((rng.randint(1, top), rng.randint(1, top)), reverse=True)
            needs = (a % 10) < (b % 10)
            if needs == borrow or d == 1:
                break
        return numeric_question(f"{a} - {b} = ?", a - b, rng, 10)
    return gen


def gen_tables(d, rng):
    hi = [5, 7, 9, 12, 15][d - 1]
    a, b = rng.randint(2, hi), rng.randint(2, hi)
    return numeric_question(f"{a} x {b} = ?", a * b, rng, max(a, b))


def gen_multi(d, rng):
    a = rng.randint(11, [20, 40, 99, 300, 999][d - 1])
    b = rng.randint(2, [5, 9, 12, 25, 40][d - 1])
    return numeric_question(f"{a} x {b} = ?", a * b, rng, b * 2)


def gen_word(d, rng):
    boxes = rng.randint(2, [4, 6, 9, 15, 25][d - 1])
    per = rng.randint(3, [6, 9, 12, 24, 48][d - 1])
    prompt = f"A shop has {boxes} boxes with {per} pencils each. How many pencils?"
    return numeric_question(prompt, boxes * per, rng, per)


def gen_exact(d, rng):
    b = rng.randint(2, [5, 7, 9, 12, 19][d - 1])
    q = rng.randint(2, [5, 9, 12, 30, 60][d - 1])
    return numeric_question(f"{b * q} / {b} = ?", q, rng, 4)


def gen_remainder(d, rng):
    b = rng.randint(3, [5, 7, 9, 12, 19][d - 1])
    q = rng.randint(2, [5, 9, 12, 30, 60][d - 1])
    r = rng.randint(1, b - 1)
    n = b * q + r
    choices = sorted({r, (r + 1) % b, (r + b - 1) % b, (r + 2) % b})
    while len(choices) < 4:
        choices.append(choices[-1] + 1)
    rng.shuffle(choices)
    return f"What is the remainder of {n} / {b}?", [str(c) for c in choices], choices.index(r)


def gen_equivalent(d, rng):
    den = rng.randint(2, [4, 6, 8, 10, 12][d - 1])
    num = rng.randint(1, den - 1)
    k = rng.randint(2, [3, 4, 5, 7, 9][d - 1])
    ans = num * k
    wrong = distractors(ans, rng, 3)
    choices = wrong + [ans]
    rng.shuffle(choices)
    return (f"{num}/{den} = ?/{den * k}", [str(c) for c in choices], choices.index(ans))


def gen_compare(d, rng):
    hi = [4, 6, 9, 12, 16][d - 1]
    while True:
        a, b = rng.randint(1, hi - 1), rng.randint(2, hi)
        c, e = rng.randint(1, hi - 1), rng.randint(2, hi)
        if a < b and c < e and a * e != c * b:
            break
    bigger = f"{a}/{b}" if a * e > c * b else f"{c}/{e}"
    choices = [f"{a}/{b}", f"{c}/{e}", "They are equal"]
    return f"Which is larger: {a}/{b} or {c}/{e}?", choices, choices.index(bigger)


CONCEPTS = [
    ("place-value", "Place value", [], [
        ("digits", "Digits and places", 5, gen_digits),
        ("rounding", "Rounding", 7, gen_rounding)]),
    ("addition", "Addition", ["place-value"], [
        ("add-basic", "Adding without carrying", 5, gen_add(False)),
        ("add-carry", "Adding with carrying", 8, gen_add(True))]),
    ("subtraction", "Subtraction", ["place-value"], [
        ("sub-basic", "Subtracting without borrowing", 5, gen_sub(False)),
        ("sub-borrow", "Subtracting with borrowing", 8, gen_sub(True))]),
    ("multiplication", "Multiplication", ["addition", "subtraction"], [
        ("tables", "Times tables", 6, gen_tables),
        ("multi-digit", "Multi-digit products", 9, gen_multi),
        ("mult-words", "Word problems", 5, gen_word)]),
    ("division", "Division", ["multiplication"], [
        ("div-exact", "Exact division", 6, gen_exact),
        ("div-remainder", "Remainders", 7, gen_remainder)]),
    ("fractions", "Fractions", ["division"], [
        ("frac-equiv", "Equivalent fractions", 6, gen_equivalent),
        ("frac-compare", "Comparing fractions", 5, gen_compare)]),
]

TEXT_PAGES = {
    "place-value": [
        "Every digit in a number has a place. In 352 the 3 is in the hundreds place, "
        "the 5 in the tens place and the 2 in the ones place.",
        "Moving one place to the left multiplies a digit's value by ten. So 3 hundreds is 300.",
        "To round to the nearest ten, look at the ones digit. 5 or more rounds up, "
        "4 or less rounds down: 47 becomes 50, 43 becomes 40."],
    "addition": [
        "Add numbers column by column, starting with the ones.",
        "If a column adds up to 10 or more, write the ones digit and carry the ten "
        "to the next column: 38 + 45: 8 + 5 = 13, write 3, carry 1; 3 + 4 + 1 = 8. Answer 83."],
    "subtraction": [
        "Subtract column by column, starting with the ones.",
        "If the top digit is smaller, borrow ten from the next column: 52 - 17: "
        "12 - 7 = 5, then 4 - 1 = 3. Answer 35."],
    "multiplication": [
        "Multiplication is repeated addition: 4 x 3 means 3 + 3 + 3 + 3 = 12.",
        "Learn the tables up to 10 x 10. They make bigger products quick.",
        "For 23 x 4, multiply the tens and the ones separately: 20 x 4 = 80, "
        "3 x 4 = 12, then add: 92.",
        "Word problems: look for equal groups. 5 bags of 6 apples is 5 x 6 = 30 apples."],
    "division": [
        "Division shares a number into equal groups: 12 / 3 = 4 because 3 x 4 = 12.",
        "When it does not divide exactly, the part left over is the remainder: "
        "14 / 4 = 3 remainder 2, since 4 x 3 = 12 and 14 - 12 = 2."],
    "fractions": [
        "A fraction names parts of a whole: 3/4 means 3 of 4 equal parts.",
        "Multiplying top and bottom by the same number gives an equal fraction: "
        "1/2 = 2/4 = 3/6.",
        "To compare fractions, rewrite them over the same bottom number, "
        "then compare the tops: 2/3 = 8/12 and 3/4 = 9/12, so 3/4 is larger."],
}

SIMPLE_PAGES = {
    cid: ["Let us go slowly. " + pages[0]] + pages[1:] for cid, pages in TEXT_PAGES.items()
}


def build_course():
    rng = random.Random(20240611)
    concepts, variants, questions = [], [], []
    for cid, title, prereqs, sections in CONCEPTS:
        concept = {"id": cid, "title": title, "sections": [
            {"id": sid, "title": stitle, "importance_weight": w} for sid, stitle, w, _ in sections]}
        if prereqs:
            concept["prerequisites"] = prereqs
        concepts.append(concept)

        variants += [
            {"id": f"{cid}-text", "concept_id": cid, "method": "text",
             "style_affinity": ["CA", "DLA"], "level_band": ["smart", "genius"],
             "body": TEXT_PAGES[cid]},
            {"id": f"{cid}-text-simple", "concept_id": cid, "method": "text",
             "style_affinity": ["CA", "DLA", "GOA"], "level_band": ["weak", "slow_learner"],
             "body": SIMPLE_PAGES[cid]},
            {"id": f"{cid}-film", "concept_id": cid, "method": "film",
             "style_affinity": ["EIA"], "body": f"media/{cid}/lesson.mp4"},
            {"id": f"{cid}-dynamic", "concept_id": cid, "method": "dynamic_view",
             "style_affinity": ["GOA", "SS"], "body": [f"media/{cid}/explorer.html",
                                                       f"media/{cid}/practice.html"]},
            {"id": f"{cid}-game", "concept_id": cid, "method": "game",
             "style_affinity": ["SS"], "body": f"media/{cid}/game.html"},
        ]

        for sid, _, _, gen in sections:
            for d in range(1, 6):
                seen = set()
                made = 0
                while made < QUESTIONS_PER_CELL:
                    prompt, choices, correct = gen(d, rng)
                    if prompt in seen or len(set(choices)) != len(choices):
                        continue
                    seen.add(prompt)
                    made += 1
                    questions.append({
                        "id": f"{sid}-d{d}-{made}", "concept_id": cid, "section_id": sid,
                        "difficulty": d, "points": min(10, d + (made % 3)),
                        "scope": "conceptual" if made % 2 else "objective",
                        "prompt": prompt, "choices": choices, "correct": correct})
    return {"meta": {"version": 1, "title": "Arithmetic foundations"},
            "concepts": concepts, "variants": variants, "questions": questions}


def build_minimal():
    questions = []
    for d in range(1, 6):
        for k in range(1, 6):
            a, b = d * 10 + k, k
            ans = a + b
            choices = [str(ans - 1), str(ans), str(ans + 1), str(ans + 2)]
            questions.append({
                "id": f"q{d}{k}", "concept_id": "c1", "section_id": "s1", "difficulty": d,
                "points": k, "scope": "conceptual" if k % 2 else "objective",
                "prompt": f"{a} + {b} = ?", "choices": choices, "correct": 1})
    return {"meta": {"version": 1},
            "concepts": [{"id": "c1", "title": "Adding", "sections": [
                {"id": "s1", "title": "Sums", "importance_weight": 5}]}],
            "variants": [{"id": "v1", "concept_id": "c1", "method": "text",
                          "body": ["Add the ones, then the tens.", "Carry when a column passes 9."]}],
            "questions": questions}


PROFILER_ITEMS = [
    ("p1", "When you start something new, you usually...", [
        ("a", "jump in and try it", {"SS": 2}),
        ("b", "set a clear goal first", {"GOA": 2}),
        ("c", "think about how others will feel", {"EIA": 2}),
        ("d", "read the instructions carefully", {"CA": 1, "DLA": 1})]),
    ("p2", "Which do you enjoy most?", [
        ("a", "games and challenges", {"SS": 2, "GOA": 1}),
        ("b", "videos and stories", {"EIA": 2}),
        ("c", "books and notes", {"DLA": 2, "CA": 1})]),
    ("p3", "When a task gets boring you...", [
        ("a", "look for something exciting", {"SS": 2}),
        ("b", "push through to finish", {"GOA": 1, "CA": 2}),
        ("c", "ask why it matters", {"DLA": 2})]),
    ("p4", "In a group you are the one who...", [
        ("a", "keeps the mood up", {"EIA": 2, "SS": 1}),
        ("b", "keeps track of the plan", {"CA": 2}),
        ("c", "pushes to win", {"GOA": 2}),
        ("d", "explains the ideas", {"DLA": 2})]),
    ("p5", "You learn best by...", [
        ("a", "doing", {"SS": 1, "GOA": 1}),
        ("b", "watching", {"EIA": 1}),
        ("c", "reading", {"CA": 1, "DLA": 1})]),
    ("p6", "A hard problem makes you feel...", [
        ("a", "curious", {"DLA": 2}),
        ("b", "determined", {"GOA": 2}),
        ("c", "restless", {"SS": 1}),
        ("d", "careful", {"CA": 2})]),
    ("p7", "Rules are...", [
        ("a", "there to be tested", {"SS": 2}),
        ("b", "useful if they help me reach my goal", {"GOA": 1}),
        ("c", "important to follow", {"CA": 2})]),
    ("p8", "You notice how people around you feel...", [
        ("a", "almost always", {"EIA": 3}),
        ("b", "sometimes", {"EIA": 1}),
        ("c", "rarely", {})]),
    ("p9", "After a lesson you like to...", [
        ("a", "move on to the next thing", {"SS": 1}),
        ("b", "check your score", {"GOA": 2}),
        ("c", "review your notes", {"CA": 1}),
        ("d", "dig deeper into the topic", {"DLA": 2})]),
    ("p10", "Your favourite way to show what you know is...", [
        ("a", "a live demo", {"SS": 1, "EIA": 1}),
        ("b", "a test result", {"GOA": 2}),
        ("c", "a tidy report", {"CA": 2}),
        ("d", "a long explanation", {"DLA": 2})]),
]


def build_profiler():
    return {"title": "Learning style questionnaire", "items": [
        {"id": iid, "prompt": prompt, "options": [
            {"id": oid, "label": label, "increments": inc} for oid, label, inc in options]}
        for iid, prompt, options in PROFILER_ITEMS]}


def write(path, doc):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    write(ROOT / "data" / "course.json", build_course())
    write(ROOT / "data" / "profiler.json", build_profiler())
    write(ROOT / "tests" / "fixtures" / "minimal_course.json", build_minimal())
    write(ROOT / "tests" / "fixtures" / "profiler.json", build_profiler())
