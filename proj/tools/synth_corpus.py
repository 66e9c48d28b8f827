#!/usr/bin/env python3
"""Deterministic generator for CoNLL-2000-shaped chunked text.

Writes `surface POS chunk` lines with a blank line between sentences. Word
choice within each POS class is Zipf-distributed so count/rank thresholds
carve the vocabulary the way they would on real text.

    synth_corpus.py --sentences 50 --seed 7 --short > small.conll
"""

import argparse
import random
import sys

DT = ["the", "a", "this", "that", "some", "every", "no", "another", "each", "its"]
PRP = ["it", "he", "she", "they", "we", "i", "you"]
CD = ["two", "three", "five", "ten", "many", "several", "twenty", "four", "six", "hundred"]
IN = ["in", "of", "on", "with", "for", "from", "at", "by", "into", "about",
      "under", "after", "before", "near", "through", "over", "without", "during"]
MD = ["can", "will", "may", "should", "must", "might", "could", "would"]
RB = ["also", "often", "never", "quickly", "slowly", "really", "still", "always",
      "rarely", "soon", "again", "here", "there", "quietly", "almost", "nearly",
      "simply", "perhaps", "certainly", "already"]
RP = ["up", "out", "down", "off", "back", "over"]
SBAR = ["that", "because", "while", "although", "when", "if", "since", "unless"]

JJ = """new good old great small large long young important public local social
different early political national real best hard free open strong whole clear
full special easy low high private major common late simple recent central
possible available personal wide poor main sure natural various similar able
serious dark red green blue cold warm fresh quiet bright heavy light modern
ancient rural urban rich thin quick strange happy sad busy tired empty narrow
broad deep flat rough smooth sharp soft loud calm wild gentle brave proud wise
""".split()

NOUN = """time year people way day man thing woman life child world school state
family student group country problem hand part place case week company system
program question work government number night point home water room mother area
money story fact month lot right study book eye job word business issue side
kind head house service friend father power hour game line end member law car
city community name president team minute idea kid body information back parent
face others level office door health person art war history party result change
morning reason research girl guy moment air teacher force education foot boy age
policy music market sense nation plan college interest death experience effect
class control care field development role effort rate heart drug show leader
light voice wife police mind price report decision son view relationship town
road arm difference value building action model season society tax director
position player record paper space ground form event official matter center couple
site project activity star table need court oil situation cost industry figure
street image phone data picture practice piece land product doctor wall patient
worker news test movie north love support technology step baby computer type
attention film tree source organization hair window evidence population site
garden river bridge village farm island valley forest mountain lake harbour
castle church museum library station bank hotel kitchen bottle letter ticket
""".split()

NNP = """london paris john mary europe england smith oxford google bbc
india china africa james sarah thames microsoft york wales ireland scotland
david emma peter anna berlin tokyo cambridge manchester""".split()

VERB = """say get make go know take see come think look want give use find tell
ask work seem feel try leave call need keep let begin help show hear play run
move live believe hold bring happen write provide sit stand lose pay meet include
continue set learn change lead understand watch follow stop create speak read
allow add spend grow open walk win offer remember love consider appear buy wait
serve die send expect build stay fall cut reach kill remain suggest raise pass
sell require report decide pull visit carry paint describe explain develop
improve protect prepare discover support enjoy accept receive produce travel
""".split()


def zipf_choice(rng, words, s=1.1):
    weights = [1.0 / (r + 1) ** s for r in range(len(words))]
    return rng.choices(words, weights=weights, k=1)[0]


def plural(n):
    if n.endswith(("s", "x", "ch", "sh")):
        return n + "es"
    if n.endswith("y") and n[-2] not in "aeiou":
        return n[:-1] + "ies"
    if n == "man":
        return "men"
    if n == "woman":
        return "women"
    if n == "child":
        return "children"
    return n + "s"


def past(v):
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and v[-2] not in "aeiou":
        return v[:-1] + "ied"
    return v + "ed"


def third(v):
    if v.endswith(("s", "x", "ch", "sh", "o")):
        return v + "es"
    if v.endswith("y") and v[-2] not in "aeiou":
        return v[:-1] + "ies"
    return v + "s"


def gerund(v):
    if v.endswith("e") and not v.endswith("ee"):
        return v[:-1] + "ing"
    return v + "ing"


class Generator:
    def __init__(self, rng, short):
        self.rng = rng
        self.short = short

    def chunk(self, label, tagged):
        out = []
        for i, (w, p) in enumerate(tagged):
            out.append((w, p, ("B-" if i == 0 else "I-") + label))
        return out

    def np(self):
        r = self.rng.random()
        z = lambda ws: zipf_choice(self.rng, ws)
        if r < 0.12:
            return self.chunk("NP", [(z(PRP), "PRP")])
        if r < 0.22:
            return self.chunk("NP", [(z(NNP), "NNP")])
        if r < 0.30:
            return self.chunk("NP", [(z(CD), "CD"), (plural(z(NOUN)), "NNS")])
        toks = [(z(DT), "DT")]
        n_adj = 0 if self.short else self.rng.choice([0, 0, 1, 1, 2])
        if self.short and self.rng.random() < 0.3:
            n_adj = 1
        for _ in range(n_adj):
            toks.append((z(JJ), "JJ"))
        if self.rng.random() < 0.25:
            toks.append((plural(z(NOUN)), "NNS"))
        else:
            toks.append((z(NOUN), "NN"))
        return self.chunk("NP", toks)

    def vp(self, subject_plural=False):
        r = self.rng.random()
        v = zipf_choice(self.rng, VERB)
        if r < 0.45:
            return self.chunk("VP", [(past(v), "VBD")])
        if r < 0.70:
            return self.chunk("VP", [(third(v), "VBZ")])
        if r < 0.85:
            return self.chunk("VP", [(zipf_choice(self.rng, MD), "MD"), (v, "VB")])
        if r < 0.93:
            return self.chunk("VP", [("has", "VBZ"), (past(v), "VBN")])
        return self.chunk("VP", [("is", "VBZ"), (gerund(v), "VBG")])

    def pp(self):
        return self.chunk("PP", [(zipf_choice(self.rng, IN), "IN")])

    def advp(self):
        return self.chunk("ADVP", [(zipf_choice(self.rng, RB), "RB")])

    def adjp(self):
        if self.rng.random() < 0.3:
            return self.chunk("ADJP", [(zipf_choice(self.rng, RB), "RB"),
                                       (zipf_choice(self.rng, JJ), "JJ")])
        return self.chunk("ADJP", [(zipf_choice(self.rng, JJ), "JJ")])

    def sbar(self):
        return self.chunk("SBAR", [(zipf_choice(self.rng, SBAR), "IN")])

    def prt(self):
        return self.chunk("PRT", [(zipf_choice(self.rng, RP), "RP")])

    def o(self, w, p):
        return [(w, p, "O")]

    def clause(self):
        parts = [self.np()]
        r = self.rng.random()
        if r < 0.1:
            parts.append(self.advp())
        parts.append(self.vp())
        r = self.rng.random()
        if r < 0.45:
            parts.append(self.np())
        elif r < 0.6:
            parts.append(self.pp())
            parts.append(self.np())
        elif r < 0.7:
            parts.append(self.adjp())
        elif r < 0.78:
            parts.append(self.prt())
            parts.append(self.np())
        else:
            parts.append(self.np())
            parts.append(self.pp())
            parts.append(self.np())
        return [t for p in parts for t in p]

    def sentence(self):
        r = self.rng.random()
        if self.short:
            body = self.clause() if r < 0.8 else self.pp() + self.np() + self.o(",", ",") + self.clause()
        elif r < 0.45:
            body = self.clause()
        elif r < 0.60:
            body = self.pp() + self.np() + self.o(",", ",") + self.clause()
        elif r < 0.75:
            body = self.clause() + self.sbar() + self.clause()
        elif r < 0.88:
            body = self.clause() + self.o("and", "CC") + self.clause()
        else:
            body = self.clause() + self.pp() + self.np()
        return body + self.o(".", ".")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sentences", type=int, required=True)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--short", action="store_true", help="short sentences, small vocabulary")
    ap.add_argument("--max-tokens", type=int, default=0, help="stop before exceeding this many tokens")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    gen = Generator(rng, args.short)
    total = 0
    out = sys.stdout
    for _ in range(args.sentences):
        sent = gen.sentence()
        if args.max_tokens and total + len(sent) > args.max_tokens:
            break
        total += len(sent)
        for w, p, c in sent:
            out.write(f"{w} {p} {c}\n")
        out.write("\n")


if __name__ == "__main__":
    main()
