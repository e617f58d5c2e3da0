# Copyright 2026 The Quizmorph Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the metric and similarity tests.

Run with --emit to print the values, or --check FILE to compare them with a
frozen copy (exit status 1 on any difference).
"""

import argparse
import json
import math
import re
import sys
from collections import Counter
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def bleu_tokens(text):
    out = []
    for ch in text:
        if ord(ch) < 128 and not ch.isalnum() and not ch.isspace():
            out.append(" " + ch + " ")
        else:
            out.append(ch.lower() if ord(ch) < 128 else ch)
    return "".join(out).split()


def bleu(hyps, refs_list):
    """Corpus BLEU, orders 1-4, exponential smoothing, closest-ref penalty."""
    matches = [0] * 4
    totals = [0] * 4
    ref_totals = [0] * 4
    hyp_len = ref_len = 0
    for hyp_text, refs_text in zip(hyps, refs_list):
        hyp = bleu_tokens(hyp_text)
        refs = [bleu_tokens(r) for r in refs_text]
        closest = min((abs(len(r) - len(hyp)), len(r)) for r in refs)[1]
        hyp_len += len(hyp)
        ref_len += closest
        for n in range(1, 5):
            grams = Counter(tuple(hyp[i:i + n]) for i in range(len(hyp) - n + 1))
            best = Counter()
            for r in refs:
                for g, c in Counter(tuple(r[i:i + n]) for i in range(len(r) - n + 1)).items():
                    best[g] = max(best[g], c)
            matches[n - 1] += sum(min(c, best[g]) for g, c in grams.items())
            totals[n - 1] += max(0, len(hyp) - n + 1)
            ref_totals[n - 1] += max(0, closest - n + 1)
    if hyp_len == 0 or matches[0] == 0:
        return 0.0
    log_p = 0.0
    zeros = 0
    for n in range(4):
        if totals[n] == 0 and ref_totals[n] == 0:
            p = 1.0
        elif matches[n] == 0:
            zeros += 1
            p = 1.0 / (2 ** zeros * hyp_len)
        else:
            p = matches[n] / totals[n]
        log_p += math.log(p) / 4
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    return 100.0 * bp * math.exp(log_p)


ABBREV = re.compile(r"(?:^|\s)[A-Z]\.$")


def last_sentence(text):
    text = " ".join(text.split())
    cut = 0
    for m in re.finditer(r"[.?!]\s+(?=[A-Z])", text):
        if ABBREV.search(text[: m.start() + 1]):
            continue
        cut = m.end()
    return text[cut:]


def norm(a):
    a = " ".join(a.lower().split()).strip("\"'`()[]{},;:!? ")
    for art in ("the ", "an ", "a "):
        if a.startswith(art) and len(a) > len(art):
            a = a[len(art):].strip("\"'`()[]{},;:!? ")
            break
    return a


def qa_metrics(records):
    """Mean exact match and max-over-references token P/R/F1."""
    acc = p_sum = r_sum = f_sum = 0.0
    for rec in records:
        pred = norm(rec["prediction"])
        refs = [norm(r) for r in rec["references"]]
        acc += 1.0 if pred in refs else 0.0
        best = None
        for ref in refs:
            pt, rt = pred.split(), ref.split()
            if not pt or not rt:
                v = 1.0 if not pt and not rt else 0.0
                cand = (v, v, v)
            else:
                common = sum((Counter(pt) & Counter(rt)).values())
                if common == 0:
                    cand = (0.0, 0.0, 0.0)
                else:
                    pr, rc = common / len(pt), common / len(rt)
                    cand = (pr, rc, 2 * pr * rc / (pr + rc))
            if best is None or cand[2] > best[2]:
                best = cand
        p_sum += best[0]
        r_sum += best[1]
        f_sum += best[2]
    n = len(records)
    return {"accuracy": acc / n, "precision": p_sum / n, "recall": r_sum / n,
            "f1": f_sum / n}


def tfidf_cosines(qb, nq):
    pairs = [(q, n) for q in qb for n in nq if norm(q["answer"]) == norm(n["answer"])]
    docs = {}
    for q, n in pairs:
        docs.setdefault(last_sentence(q["question"]), None)
        docs.setdefault(n["question"].strip(), None)
    terms = {d: re.findall(r"[a-z0-9\x80-\U0010ffff]+", d.lower()) for d in docs}
    df = Counter(t for d in docs for t in set(terms[d]))
    n_docs = len(docs)
    idf = {t: math.log((1 + n_docs) / (1 + c)) + 1 for t, c in df.items()}

    def vec(d):
        v = Counter()
        for t in terms[d]:
            v[t] += idf[t]
        return v

    out = {}
    for q, n in pairs:
        a, b = vec(last_sentence(q["question"])), vec(n["question"].strip())
        dot = sum(a[t] * b[t] for t in a)
        na = math.sqrt(sum(x * x for x in a.values()))
        nb = math.sqrt(sum(x * x for x in b.values()))
        out[q["id"] + "|" + n["id"]] = dot / (na * nb)
    return out


def load(name):
    with open(FIXTURES / name, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def compute():
    ev = load("eval_predictions.jsonl")
    return {
        "bleu_brevity_example": bleu(["the cat sat"], [["the cat sat on the mat"]]),
        "bleu_eval_fixture": bleu([r["prediction"] for r in ev],
                                  [r["references"] for r in ev]),
        "bleu_eval_perfect": bleu([r["references"][0] for r in ev],
                                  [r["references"] for r in ev]),
        "qa_eval_fixture": qa_metrics(ev),
        "cosine_123_456": 32 / math.sqrt(14 * 77),
        "tfidf_fixture_pairs": tfidf_cosines(load("qb.jsonl"), load("nq.jsonl")),
    }


def close(a, b):
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(
            close(a[k], b[k]) for k in a)
    return abs(a - b) <= 1e-9


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--emit", action="store_true")
    ap.add_argument("--check")
    args = ap.parse_args()
    values = compute()
    if args.check:
        with open(args.check, encoding="utf-8") as f:
            frozen = json.load(f)
        if not close(values, frozen):
            print("oracle values differ from", args.check)
            print(json.dumps(values, indent=2, sort_keys=True))
            return 1
        print("oracle values match", args.check)
        return 0
    print(json.dumps(values, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
