#!/usr/bin/env python3
"""Generate the bundled mini test collection (data/minicorpus).

Synthetic TREC-style documents built from 20 topical word clusters plus a
shared background vocabulary, title-only topics, binary qrels, and a gloss
lexicon extracted from a local WordNet 3.0 copy for every word and title
phrase the collection uses.

    python3 tools/make_minicorpus.py --wordnet /path/to/wordnet-3.0 --out data/minicorpus

Output is a pure function of the seed and the WordNet files.
"""

import argparse
import pathlib
import random
import shutil

# (title, topical words). Title words also appear in the topical pool.
THEMES = [
    ("lyme disease arthritis", "tick bite infection joint inflammation swelling bacteria antibiotic rash fever deer knee"),
    ("polygamy", "marriage wife husband spouse monogamy polygamist widow bride wedding custom tribe law"),
    ("illegal immigration", "border migrant alien deportation visa asylum refugee passport citizenship smuggling patrol customs"),
    ("solar energy", "sun panel electricity photovoltaic power heat renewable cell roof battery grid radiation"),
    ("coral reef", "ocean fish polyp lagoon algae bleaching diver tropical island shell marine sea"),
    ("heart attack", "artery cholesterol cardiac blood pressure chest pain surgeon clot ambulance hospital stroke"),
    ("volcano eruption", "lava magma ash crater earthquake mountain explosion smoke rock geologist island evacuation"),
    ("oil spill", "tanker petroleum crude pollution beach cleanup slick bird coast barrel leak shipping"),
    ("wine production", "grape vineyard harvest cellar barrel vintage ferment bottle cork winery taste red"),
    ("chess tournament", "king queen bishop knight pawn rook checkmate grandmaster opening board champion match"),
    ("honey bee", "hive pollen nectar wax colony queen flower swarm beekeeper sting drone orchard"),
    ("space shuttle", "astronaut orbit rocket launch satellite mission crew station capsule fuel gravity moon"),
    ("drug smuggling", "cocaine heroin cartel trafficker police seizure border narcotics arrest courier gang prison"),
    ("forest fire", "wildfire smoke firefighter drought timber blaze flame evacuation tree brush helicopter ash"),
    ("organ transplant", "kidney liver donor surgeon transplant rejection tissue hospital patient surgery recipient immune"),
    ("stock market crash", "share investor broker exchange panic bank price trader loss dividend bubble recession"),
    ("whale hunting", "harpoon ship blubber whaler ocean mammal catch fleet ban sanctuary oil sea"),
    ("earthquake prediction", "seismic fault tremor seismograph magnitude geologist quake shock plate crust warning rock"),
    ("tea plantation", "leaf estate picker plantation green black brew cup harvest hill export shrub"),
    ("jazz music", "saxophone trumpet improvisation band blues rhythm piano drummer club swing melody concert"),
]

BACKGROUND = (
    "time year people way day man thing woman life child world school state family student group country "
    "problem hand part place case week company system program question work government number night point "
    "home water room mother area money story fact month lot right study book eye job word business issue "
    "side kind head house service friend father power hour game line end member city community name "
    "president team minute idea kid body information back parent face others level office door health "
    "person art war history party result change morning reason research girl guy moment air teacher force "
    "education foot boy age policy process music market sense nation plan college interest death experience "
    "effect use class control care field development role effort rate heart drug show leader light voice "
    "wife police mind price report decision son view relationship town road arm difference value building "
    "action model season society tax director position player record paper space ground form event official "
    "matter center couple site project activity star table need court oil situation cost industry figure "
    "street image phone data picture practice piece land product doctor wall patient worker news test movie "
    "north love support technology step baby computer type attention film tree source organization hair "
    "window evidence population site truth song energy"
).split()

GLUE = "the of and a to in is was for on that with as by at from it be has have this are were".split()

NUM_RELEVANT = 12
NUM_DISTRACTOR = 6
NUM_DOCS = 500


def load_glosses(wordnet_dir, wanted):
    """lemma -> list of glosses, one per synset containing it (all parts of speech)."""
    glosses = {w: [] for w in wanted}
    for pos in ("noun", "verb", "adj", "adv"):
        synsets = {}
        with open(wordnet_dir / f"data.{pos}", encoding="latin-1") as f:
            for line in f:
                if line.startswith(" "):
                    continue
                line = line.rstrip("\r\n")
                head, _, gloss = line.partition("|")
                synsets[head.split(" ", 1)[0]] = gloss.strip()
        with open(wordnet_dir / f"index.{pos}", encoding="latin-1") as f:
            for line in f:
                if line.startswith(" "):
                    continue
                fields = line.split()
                lemma = fields[0]
                if lemma not in glosses:
                    continue
                synset_cnt = int(fields[2])
                p_cnt = int(fields[3])
                for off in fields[4 + p_cnt + 2 : 4 + p_cnt + 2 + synset_cnt]:
                    glosses[lemma].append(synsets[off])
    return glosses


def sentence(rng, words, n):
    out = []
    for _ in range(n):
        if rng.random() < 0.3:
            out.append(rng.choice(GLUE))
        out.append(rng.choice(words))
    return " ".join(out)


def make_doc(rng, docno, body_words):
    paras = []
    rng.shuffle(body_words)
    step = max(1, len(body_words) // 3)
    for i in range(0, len(body_words), step):
        paras.append("<P>\n" + " ".join(body_words[i : i + step]) + "\n</P>")
    return f"<DOC>\n<DOCNO> {docno} </DOCNO>\n<TEXT>\n" + "\n".join(paras) + "\n</TEXT>\n</DOC>\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wordnet", required=True, type=pathlib.Path)
    ap.add_argument("--out", required=True, type=pathlib.Path)
    ap.add_argument("--seed", type=int, default=604)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    topics = []
    docs = []  # (docno, words)
    qrels = []
    for ti, (title, pool) in enumerate(THEMES):
        tid = 401 + ti
        topics.append((tid, title))
        title_words = title.split()
        topical = pool.split()
        for j in range(NUM_RELEVANT):
            words = []
            # some relevant documents never use the title words: expansion should find them
            if j % 4 != 3:
                words += rng.sample(title_words * 3, k=rng.randint(1, len(title_words) * 2))
            words += [rng.choice(topical) for _ in range(rng.randint(8, 20))]
            words += [rng.choice(BACKGROUND) for _ in range(rng.randint(20, 60))]
            docs.append([None, words, tid, 1])
        for _ in range(NUM_DISTRACTOR):
            words = [rng.choice(title_words)]
            other = THEMES[rng.randrange(len(THEMES))][1].split()
            words += [rng.choice(other) for _ in range(rng.randint(2, 6))]
            words += [rng.choice(BACKGROUND) for _ in range(rng.randint(30, 70))]
            docs.append([None, words, tid, 0])
    while len(docs) < NUM_DOCS:
        words = [rng.choice(BACKGROUND) for _ in range(rng.randint(30, 90))]
        if rng.random() < 0.3:
            other = THEMES[rng.randrange(len(THEMES))][1].split()
            words += [rng.choice(other) for _ in range(rng.randint(1, 3))]
        docs.append([None, words, None, 0])
    rng.shuffle(docs)
    for i, d in enumerate(docs):
        d[0] = f"MINI-{i:04d}"

    with open(args.out / "docs.trec", "w") as f:
        for docno, words, _, _ in docs:
            glued = sentence(rng, words, len(words)).split()
            f.write(make_doc(rng, docno, glued))

    with open(args.out / "topics.txt", "w") as f:
        for tid, title in topics:
            f.write(f"<top>\n<num> Number: {tid}\n<title> {title}\n\n<desc> Description:\n"
                    f"Documents discussing {title}.\n\n<narr> Narrative:\nAny aspect of {title} is relevant.\n</top>\n\n")

    judged = {}
    for docno, _, tid, grade in docs:
        if tid is not None:
            judged[(tid, docno)] = grade
    # a sample of unjudged background documents judged non-relevant per topic
    background = [d[0] for d in docs if d[2] is None]
    for tid, _ in topics:
        for docno in rng.sample(background, 5):
            judged.setdefault((tid, docno), 0)
    with open(args.out / "qrels.txt", "w") as f:
        for (tid, docno), grade in sorted(judged.items()):
            f.write(f"{tid} 0 {docno} {grade}\n")

    vocab = set(BACKGROUND)
    for title, pool in THEMES:
        vocab.update(title.split())
        vocab.update(pool.split())
        w = title.split()
        vocab.update(f"{a}_{b}" for a, b in zip(w, w[1:]))
    glosses = load_glosses(args.wordnet, vocab)
    with open(args.out / "lexicon.tsv", "w") as f:
        for lemma in sorted(glosses):
            for g in glosses[lemma]:
                f.write(f"{lemma}\t{g}\n")
    shutil.copyfile(args.wordnet / "LICENSE", args.out / "WORDNET_LICENSE")
    missing = sorted(w for w, g in glosses.items() if not g and "_" not in w)
    if missing:
        print("no WordNet entry:", " ".join(missing))


if __name__ == "__main__":
    main()
