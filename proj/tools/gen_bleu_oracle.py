#!/usr/bin/env python3
"""Freeze SacreBLEU reference values for the C++ BLEU tests.

Run once; the output (tests/data/bleu_oracle.json) is checked in. Per-pair
values are single-segment corpus scores with SacreBLEU's default settings
(13a tokenizer, exp smoothing, no lowercasing); the pooled value scores all
pairs as one corpus.
"""

import json
import random
import sys

import sacrebleu
from sacrebleu.metrics import BLEU
from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a

RULES = [
    "Fred wakes up late >Causes/Enables> Fred misses his bus",
    "Someone_A wakes up late >Causes/Enables> Someone_A misses Something_A",
    "They were stolen the night before >Causes/Enables> I could not find my tools",
    "Something_A is stolen >Causes/Enables> Someone_A cannot find Something_A",
    "Anna feels hungry >Motivates> Anna buys a sandwich",
    "Someone_A is in a kitchen >Enables> Someone_A cooks dinner",
    "Tom owns a car >Enables> Tom drives to work",
    "Jill is brave >Enables> Jill jumps into the lake",
    "The dog barks loudly >Causes> the neighbors wake up",
    "Sam gives Lucy a gift >Results in> Lucy possesses a gift",
    "Mia moves to Paris >Results in> Mia is in Paris",
    "Bob loses his wallet >Causes/Enables> Bob cannot pay for lunch",
    "Kate studies all night >Causes/Enables> Kate passes the exam",
    "The storm knocks down the power lines >Causes/Enables> the house goes dark",
    "Someone_A eats Something_A >Results in> Someone_A is full",
]

EXTRA = [
    ("It cost 3.5 dollars, or 1,000 cents.", "It cost 3.5 dollars or 1,000 cents."),
    ("A 5-year-old kid (age 5) said: \"hi!\"", "A 5-year-old kid said \"hi\"."),
    ("Tom &amp; Jerry &quot;play&quot; &lt;outside&gt;", "Tom & Jerry \"play\" <outside>"),
    ("The café is open <skipped> today.", "The café is open today."),
    ("He didn't go; she wasn't sure...", "He did not go, she was not sure."),
    ("", "Fred misses his bus"),
    ("bus", "Fred misses his bus"),
    ("the the the the", "the cat sat down"),
    ("Fred misses his bus", "Fred misses his bus"),
    ("Mr. Smith paid $40.50 at 9:30 a.m.", "Mr. Smith paid $40.50 at 9:30."),
    ("well-known e-mail 2-3 items", "well known email 2 - 3 items"),
    ("Über-cool naïve résumé.", "Uber-cool naive resume."),
    ("Trailing spaces here   ", "Trailing spaces here"),
    ("x,y.z 1.2.3 a.b,c", "x , y . z 1.2.3"),
    ("Someone_A   feels\tsad >Causes> Someone_A cries", "Someone_A feels sad >Causes> Someone_A cries"),
]

TOKENIZER_CASES = [
    "Hello, world!",
    "",
    "3.5 points",
    "1,000 people; 2.5% growth",
    "a-b 5-6 x-",
    "Tom &amp; Jerry &quot;x&quot;",
    "<skipped> kept",
    "end.\tNext, start.",
    "(parenthesized) [bracket] {brace} a/b",
    "Someone_A >Causes/Enables> Someone_B",
    " nbsp em　ideo ",
    "I can't, won't.",
]


def perturb(rng, text):
    words = text.split()
    op = rng.randrange(6)
    if op == 0 and len(words) > 3:
        del words[rng.randrange(len(words))]
    elif op == 1 and len(words) > 3:
        i = rng.randrange(len(words) - 1)
        words[i], words[i + 1] = words[i + 1], words[i]
    elif op == 2:
        words.insert(rng.randrange(len(words) + 1), rng.choice(["really", "then", "the", "a", "quickly"]))
    elif op == 3:
        words = words[: max(1, len(words) // 2)]
    elif op == 4:
        words[rng.randrange(len(words))] = rng.choice(["someone", "it", "car", "home"])
    return " ".join(words) + rng.choice(["", ".", " .", "!"])


def main(out_path):
    rng = random.Random(2022)
    pairs = list(EXTRA)
    while len(pairs) < 50:
        ref = rng.choice(RULES)
        hyp = perturb(rng, ref)
        if rng.random() < 0.3:
            hyp = perturb(rng, hyp)
        pairs.append((hyp, ref))

    bleu = BLEU()
    rows = []
    for hyp, ref in pairs:
        rows.append({"hyp": hyp, "ref": ref, "bleu": bleu.corpus_score([hyp], [[ref]]).score})
    pooled = bleu.corpus_score([h for h, _ in pairs], [[r for _, r in pairs]]).score

    tok = Tokenizer13a()
    tokenizer = [{"text": t, "tokens": tok(t.rstrip()).split()} for t in TOKENIZER_CASES]

    with open(out_path, "w", encoding="utf-8") as f:
        json.dump(
            {
                "sacrebleu_version": sacrebleu.__version__,
                "signature": str(bleu.get_signature()),
                "pairs": rows,
                "corpus_bleu": pooled,
                "tokenizer": tokenizer,
            },
            f,
            ensure_ascii=False,
            indent=1,
        )
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/bleu_oracle.json")
