#!/usr/bin/env python3
"""Builds the bundled sample Microtext-format corpora under data/.

The generator is deterministic. It emits 112 parallel EN/FA argument-graph
documents whose corpus statistics match the reference figures the toolkit's
stats command is tested against (documents, per-stance ADU counts, and word
totals), plus the replay fixture used by the augmentation tests.

Run from the repository root:  python3 scripts/make_corpus.py
"""

import json
import os
import random
import sys

OUT_EN = "data/microtext/en"
OUT_FA = "data/microtext/fa"
OUT_FIXTURES = "data/fixtures"

SEED = 20250809

# Corpus-level targets (whitespace-token words).
EN_PRO_WORDS = 6299
EN_CON_WORDS = 1702
FA_PRO_WORDS = 6845
FA_CON_WORDS = 1807
N_DOCS = 112
N_PRO = 451
N_CON = 125

# The two case-study documents ship verbatim; everything else is filler.
CASE_D14 = {
    "doc_id": "micro_d14",
    "topic": "",
    "edus_en": [
        "I think Fritz has never been in a fight in his life.",
        "As a boy he did use to scuffle with the other choirboys,",
        "but that hardly counts as a proper brawl.",
        "And he always chickens out when things get dicey.",
        "Yesterday, when the bouncer wouldn't let us in, he was suddenly gone.",
    ],
    "edus_fa": [
        "من فکر می‌کنم فریتز هرگز در زندگی خود دعوا نکرده است.",
        "به عنوان یک پسر، او با سایر پسران کر درگیر می‌شد.",
        "اما این به سختی به عنوان یک نزاع مناسب به حساب می‌آید.",
        "و او همیشه وقتی همه چیز خراب می‌شود، از خود بیخود می‌شود.",
        "دیروز، زمانی که جسور اجازه نداد ما وارد شویم، ناگهان رفت.",
    ],
    "stances": ["pro", "con", "pro", "pro", "pro"],
    # (id, rel, src, trg); c2 targets the rebuttal edge itself.
    "edges": [
        ("c1", "rebuttal", "a2", "a1"),
        ("c2", "undercut", "a3", "c1"),
        ("c3", "support", "a4", "a1"),
        ("c4", "example", "a5", "a4"),
    ],
}

CASE_K015 = {
    "doc_id": "micro_k015",
    "topic": "TXL_airport_remain_operational_after_BER_opening",
    "edus_en": [
        "BER should be re-conceptualized from scratch,",
        "even if billions of Euros have already been invested in the existing airport project",
        "and this would delay the date of completion indefinitely.",
        "Both the drawn-out building operations and the mounting safety issues show clear shortcomings in the entire planning.",
    ],
    "edus_fa": [
        "BER باید دوباره از ابتدا مفهوم‌سازی شود.",
        "حتی اگر میلیاردها یورو قبلاً در پروژه فرودگاه موجود سرمایه گذاری شده باشد:",
        "و این تاریخ تکمیل را برای مدت نامحدودی به تاخیر می‌اندازد.",
        "هم عملیات های ساختمانی کشیده شده و هم مسائل ایمنی نصب، کاستی های آشکاری را در کل برنامه ریزی نشان می دهد.",
    ],
    "stances": ["pro", "con", "con", "pro"],
    "edges": [
        ("c1", "rebuttal", "a2", "a1"),
        ("c2", "rebuttal", "a3", "a1"),
        ("c3", "support", "a4", "a1"),
    ],
}

TOPICS = [
    "waste_separation", "school_uniforms", "public_broadcasting_fees",
    "bicycle_helmet_duty", "shop_opening_hours", "video_surveillance",
    "organ_donation_scheme", "national_service", "smoking_ban_restaurants",
    "tuition_fees", "speed_limit_motorways", "referendums_federal_level",
    "animal_testing", "library_funding", "dog_tax_increase",
    "solar_subsidies", "rent_control", "night_flights_ban",
    "playground_renewal", "municipal_wifi",
]

EN_SUBJECTS = [
    "the council", "local residents", "many citizens", "the committee",
    "city planners", "most parents", "the school board", "several experts",
    "the community", "young families", "small businesses", "the district",
]
EN_PRO_VERBS = ["supports", "endorses", "favors", "defends", "welcomes"]
EN_CON_VERBS = ["opposes", "rejects", "questions", "criticizes", "doubts"]
EN_OBJECTS = [
    "the proposal", "this plan", "the reform", "the project", "new funding",
    "the measure", "this policy", "the initiative", "the scheme",
    "the amendment",
]
EN_ADVERBS = [
    "clearly", "arguably", "often", "broadly", "indeed", "largely",
    "plainly", "surely", "notably", "evidently", "strongly", "openly",
]
EN_CONNECTORS = ["because", "since", "although", "while", "and", "yet"]
EN_CLAUSES = [
    "costs keep rising", "benefits remain unclear", "demand stays high",
    "results look promising", "evidence is mixed", "budgets stay tight",
    "support keeps growing", "risks seem manageable", "turnout stays low",
    "complaints keep coming", "savings add up", "numbers speak volumes",
]

FA_SUBJECTS = ["شورا", "ساکنان محلی", "بسیاری از شهروندان", "کمیته شهر",
               "برنامه‌ریزان شهری", "بیشتر والدین", "کارشناسان مستقل",
               "جامعه محلی", "خانواده‌های جوان", "کسب‌وکارهای کوچک"]
FA_PRO_VERBS = ["حمایت می‌کند", "تأیید می‌کند", "می‌پذیرد", "دفاع می‌کند"]
FA_CON_VERBS = ["مخالفت می‌کند", "رد می‌کند", "زیر سؤال می‌برد", "نقد می‌کند"]
FA_OBJECTS = ["از این طرح", "از این برنامه", "از این اصلاحات", "از این پروژه",
              "از بودجه جدید", "از این سیاست", "از این پیشنهاد"]
FA_ADVERBS = ["به‌روشنی", "احتمالاً", "اغلب", "به‌طورکلی", "در واقع", "عمدتاً",
              "آشکارا", "قطعاً", "به‌ویژه", "ظاهراً"]
FA_CONNECTORS = ["زیرا", "چون", "اگرچه", "در حالی که", "و", "اما"]
FA_CLAUSES = ["هزینه‌ها رو به افزایش است", "مزایا همچنان مبهم است",
              "تقاضا بالا می‌ماند", "نتایج امیدوارکننده به نظر می‌رسد",
              "شواهد یکدست نیست", "بودجه محدود باقی می‌ماند",
              "حمایت عمومی رشد می‌کند", "خطرها قابل مدیریت است",
              "مشارکت پایین مانده است", "شکایت‌ها ادامه دارد"]


def words(n_text):
    return len(n_text.split())


def xml_escape(s):
    return (s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def make_sentence(rng, n, stance, lang):
    """A sentence with exactly n whitespace tokens."""
    if lang == "en":
        subjects, objects = EN_SUBJECTS, EN_OBJECTS
        verbs = EN_PRO_VERBS if stance == "pro" else EN_CON_VERBS
        adverbs, connectors, clauses = EN_ADVERBS, EN_CONNECTORS, EN_CLAUSES
    else:
        subjects, objects = FA_SUBJECTS, FA_OBJECTS
        verbs = FA_PRO_VERBS if stance == "pro" else FA_CON_VERBS
        adverbs, connectors, clauses = FA_ADVERBS, FA_CONNECTORS, FA_CLAUSES

    subj = rng.choice(subjects).split()
    verb = rng.choice(verbs).split()
    obj = rng.choice(objects).split()
    core = len(subj) + len(verb) + len(obj)
    while core > n:  # very short targets: drop the object
        obj = obj[:-1] if len(obj) > 1 else []
        core = len(subj) + len(verb) + len(obj)
        if not obj:
            break
    mid_adverbs, tails = [], []
    need = n - core
    while need > 0:
        connector = rng.choice(connectors).split()
        clause = rng.choice(clauses).split()
        chunk = len(connector) + len(clause)
        if need >= chunk and rng.random() < 0.7:
            tails.extend(connector + clause)
            need -= chunk
        else:
            fitting = [a for a in adverbs if len(a.split()) <= need]
            adverb = rng.choice(fitting).split()
            mid_adverbs.extend(adverb)
            need -= len(adverb)
    tokens = subj + mid_adverbs + verb + obj + tails
    assert len(tokens) == n, (len(tokens), n)
    sentence = " ".join(tokens) + "."
    if lang == "en":
        sentence = sentence[0].upper() + sentence[1:]
    return sentence


def allocate(rng, count, total, lo=7, hi=22):
    """count sentence lengths in [lo, hi] summing exactly to total."""
    targets = [rng.randint(lo + 2, hi - 2) for _ in range(count)]
    diff = total - sum(targets)
    step = 1 if diff > 0 else -1
    i = 0
    while diff != 0:
        t = targets[i % count]
        if lo <= t + step <= hi:
            targets[i % count] = t + step
            diff -= step
        i += 1
    return targets


def filler_structure(doc_index, n_adus, n_cons, with_undercut, with_example):
    """Stances and non-segment edges for one filler document."""
    stances = ["pro"] * n_adus
    con_positions = [1] if n_cons == 1 else [1, 3]
    for pos in con_positions:
        stances[pos] = "con"
    edges = []
    rebuttal_edge_of = {}
    edge_counter = 0
    for k in range(1, n_adus):
        adu = f"a{k + 1}"
        edge_counter += 1
        edge_id = f"c{edge_counter}"
        if stances[k] == "con":
            edges.append((edge_id, "rebuttal", adu, "a1"))
            rebuttal_edge_of[adu] = edge_id
        elif with_undercut and k == 2 and "a2" in rebuttal_edge_of:
            edges.append((edge_id, "undercut", adu, rebuttal_edge_of["a2"]))
        elif with_example and k == n_adus - 1:
            target = None
            for j in range(k - 1, 0, -1):
                if stances[j] == "pro":
                    target = f"a{j + 1}"
                    break
            if target is None:
                edges.append((edge_id, "support", adu, "a1"))
            else:
                edges.append((edge_id, "example", adu, target))
        elif doc_index % 3 == 0 and k >= 3 and stances[k - 1] == "pro":
            edges.append((edge_id, "support", adu, f"a{k}"))
        else:
            edges.append((edge_id, "support", adu, "a1"))
    return stances, edges


def doc_xml(doc_id, lang, topic, edu_rows, adus, edges):
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    attrs = f'id="{xml_escape(doc_id)}" lang="{lang}"'
    if topic:
        attrs += f' topic_id="{xml_escape(topic)}"'
    lines.append(f"<arggraph {attrs}>")
    for edu_id, text in edu_rows:
        lines.append(f'  <edu id="{edu_id}">{xml_escape(text)}</edu>')
    for adu_id, stance in adus:
        lines.append(f'  <adu id="{adu_id}" stance="{stance}"/>')
    seg = 0
    for edu_id, _ in edu_rows:
        seg += 1
        target = edu_id.split("_")[0].replace("e", "a")
        lines.append(
            f'  <edge id="s{seg}" rel="segment" src="{edu_id}" trg="{target}"/>')
    for edge_id, rel, src, trg in edges:
        lines.append(
            f'  <edge id="{edge_id}" rel="{rel}" src="{src}" trg="{trg}"/>')
    lines.append("</arggraph>")
    return "\n".join(lines) + "\n"


def edu_rows_for(texts, split_root):
    """EDU rows (id, text); ids encode the owning ADU (e1 -> a1). The root
    text may be split into two EDUs at a word boundary."""
    rows = []
    for i, text in enumerate(texts):
        if i == 0 and split_root and words(text) >= 4:
            tokens = text.split()
            half = len(tokens) // 2
            rows.append((f"e1_1", " ".join(tokens[:half])))
            rows.append((f"e1_2", " ".join(tokens[half:])))
        else:
            rows.append((f"e{i + 1}", text))
    return rows


def pinned_word_counts():
    counts = {"en": {"pro": 0, "con": 0}, "fa": {"pro": 0, "con": 0}}
    for case in (CASE_D14, CASE_K015):
        for lang, key in (("en", "edus_en"), ("fa", "edus_fa")):
            for text, stance in zip(case[key], case["stances"]):
                counts[lang][stance] += words(text)
    return counts


def main():
    os.makedirs(OUT_EN, exist_ok=True)
    os.makedirs(OUT_FA, exist_ok=True)
    os.makedirs(OUT_FIXTURES, exist_ok=True)
    rng = random.Random(SEED)

    pinned = pinned_word_counts()
    pinned_pro = sum(1 for c in (CASE_D14, CASE_K015)
                     for s in c["stances"] if s == "pro")
    pinned_con = sum(1 for c in (CASE_D14, CASE_K015)
                     for s in c["stances"] if s == "con")

    n_filler = N_DOCS - 2
    filler_pro = N_PRO - pinned_pro
    filler_con = N_CON - pinned_con

    # 12 documents carry two con ADUs, the rest one; 17 documents have six
    # ADUs, the rest five. This lands exactly on the corpus totals.
    cons_per_doc = [2] * 12 + [1] * (n_filler - 12)
    adus_per_doc = [6] * 17 + [5] * (n_filler - 17)
    rng.shuffle(cons_per_doc)
    rng.shuffle(adus_per_doc)
    assert sum(cons_per_doc) == filler_con
    assert sum(adus_per_doc) == filler_pro + filler_con

    undercut_docs = set(range(0, n_filler, 7))          # 16 docs -> quota 15
    undercut_docs = set(sorted(undercut_docs)[:15])
    example_docs = set(i for i in range(3, n_filler, 5)
                       if i not in undercut_docs)
    example_docs = set(sorted(example_docs)[:20])

    pro_targets = {"en": allocate(rng, filler_pro, EN_PRO_WORDS - pinned["en"]["pro"]),
                   "fa": allocate(rng, filler_pro, FA_PRO_WORDS - pinned["fa"]["pro"])}
    con_targets = {"en": allocate(rng, filler_con, EN_CON_WORDS - pinned["en"]["con"]),
                   "fa": allocate(rng, filler_con, FA_CON_WORDS - pinned["fa"]["con"])}
    cursors = {("en", "pro"): 0, ("en", "con"): 0,
               ("fa", "pro"): 0, ("fa", "con"): 0}

    docs = []  # (doc_id, topic, stances, edges, texts_by_lang)
    for i in range(n_filler):
        doc_id = f"micro_b{i + 1:03d}"
        topic = TOPICS[i % len(TOPICS)]
        stances, edges = filler_structure(i, adus_per_doc[i], cons_per_doc[i],
                                          i in undercut_docs, i in example_docs)
        texts = {"en": [], "fa": []}
        for lang in ("en", "fa"):
            for stance in stances:
                pool = pro_targets if stance == "pro" else con_targets
                cursor = cursors[(lang, stance)]
                n = pool[lang][cursor]
                cursors[(lang, stance)] = cursor + 1
                texts[lang].append(make_sentence(rng, n, stance, lang))
        docs.append((doc_id, topic, stances, edges, texts))

    for case in (CASE_D14, CASE_K015):
        docs.append((case["doc_id"], case["topic"], case["stances"],
                     case["edges"],
                     {"en": case["edus_en"], "fa": case["edus_fa"]}))

    # Root-EDU splits: segmentation differs between the two languages.
    en_split = set(f"micro_b{i + 1:03d}" for i in range(20))
    fa_split = set(f"micro_b{i + 1:03d}" for i in range(64))

    totals = {("en", "pro"): 0, ("en", "con"): 0,
              ("fa", "pro"): 0, ("fa", "con"): 0}
    edus = {"en": 0, "fa": 0}
    for doc_id, topic, stances, edges, texts in docs:
        adus = [(f"a{k + 1}", s) for k, s in enumerate(stances)]
        for lang, out_dir, split_set in (("en", OUT_EN, en_split),
                                         ("fa", OUT_FA, fa_split)):
            rows = edu_rows_for(texts[lang], doc_id in split_set)
            edus[lang] += len(rows)
            for text, stance in zip(texts[lang], stances):
                totals[(lang, stance)] += words(text)
            with open(os.path.join(out_dir, f"{doc_id}.xml"), "w",
                      encoding="utf-8") as f:
                f.write(doc_xml(doc_id, lang, topic, rows, adus, edges))

    assert totals[("en", "pro")] == EN_PRO_WORDS, totals
    assert totals[("en", "con")] == EN_CON_WORDS, totals
    assert totals[("fa", "pro")] == FA_PRO_WORDS, totals
    assert totals[("fa", "con")] == FA_CON_WORDS, totals

    make_replay_fixture(rng, docs)

    print(f"wrote {len(docs)} documents per language")
    print(f"EN words pro/con: {totals[('en', 'pro')]}/{totals[('en', 'con')]}"
          f", EDUs {edus['en']}")
    print(f"FA words pro/con: {totals[('fa', 'pro')]}/{totals[('fa', 'con')]}"
          f", EDUs {edus['fa']}")


FIXTURE_OPENERS = [
    "In my view,", "On balance,", "Frankly,", "All told,", "For one thing,",
    "Taken together,", "By most accounts,", "Looking closer,",
]
FIXTURE_PRO_CORES = [
    "the upside is hard to deny",
    "the plan earns its keep",
    "the case for it holds up",
    "the change pays for itself",
    "the idea deserves a fair trial",
    "the scheme rests on solid ground",
]
FIXTURE_CON_CORES = [
    "the drawbacks pile up quickly",
    "the promised gains never materialize",
    "the trade-offs get ignored",
    "the burden falls on the wrong people",
    "the plan papers over real problems",
    "the numbers simply do not add up",
]
FIXTURE_TAILS = [
    "once you run the figures", "whatever the brochures claim",
    "as recent pilots showed", "despite the upbeat headlines",
    "if history is any guide", "when budgets are this tight",
    "no matter how it is framed", "as most neighbours will tell you",
]


def make_replay_fixture(rng, docs):
    corpus_texts = set()
    for _, _, _, _, texts in docs:
        for lang in ("en",):
            for t in texts[lang]:
                corpus_texts.add(" ".join(t.lower().split()))

    used = set(corpus_texts)
    entries = []
    for stance, count in (("pro", 420), ("con", 650)):
        cores = FIXTURE_PRO_CORES if stance == "pro" else FIXTURE_CON_CORES
        made = 0
        serial = 0
        while made < count:
            serial += 1
            text = " ".join([
                rng.choice(FIXTURE_OPENERS),
                rng.choice(cores),
                rng.choice(FIXTURE_TAILS),
                f"(case {serial})" if serial % 3 == 0 else
                rng.choice(FIXTURE_TAILS),
            ]) + "."
            key = " ".join(text.lower().split())
            if key in used:
                continue
            used.add(key)
            entries.append({"stance": stance, "text": text})
            made += 1
    path = os.path.join(OUT_FIXTURES, "replay_en.jsonl")
    with open(path, "w", encoding="utf-8") as f:
        for e in entries:
            f.write(json.dumps(e, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {len(entries)} replay candidates to {path}")


if __name__ == "__main__":
    sys.exit(main())
