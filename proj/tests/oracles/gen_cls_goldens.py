#!/usr/bin/env python3
"""Reference phone parser written from the rule descriptions alone, used to
produce the CLS golden files.  It shares no code or tables with the C++
parser: offsets, phones and both phonological rules are spelled out here.

    gen_cls_goldens.py OUT_DIR           write the goldens
    gen_cls_goldens.py --check OUT_DIR   fail if the files differ
"""

import argparse
import sys
import unicodedata
from pathlib import Path

BLOCKS = {
    "devanagari": 0x0900, "bengali": 0x0980, "gujarati": 0x0A80, "odia": 0x0B00,
    "tamil": 0x0B80, "telugu": 0x0C00, "kannada": 0x0C80, "malayalam": 0x0D00,
}
LANG_SCRIPT = {
    "hindi": "devanagari", "rajasthani": "devanagari", "bengali": "bengali",
    "gujarati": "gujarati", "odia": "odia", "tamil": "tamil", "telugu": "telugu",
    "kannada": "kannada", "malayalam": "malayalam",
}
INDO_ARYAN = {"hindi", "rajasthani", "bengali", "gujarati", "odia"}

# Phones by offset within a block (Devanagari layout).
CONSONANTS = dict(zip(range(0x15, 0x3A), (
    "k kh g gh ng c ch j jh nj tx txh dx dxh nx t th d dh n nd p ph b bh m "
    "y r rx l lx zh w sh sx s h").split()))
CONSONANTS.update({0x58: "kq", 0x59: "khq", 0x5A: "gq", 0x5B: "z", 0x5C: "dxq",
                   0x5D: "dxhq", 0x5E: "f", 0x5F: "y"})
INDEPENDENT = dict(zip(range(0x04, 0x15), (
    "a a aa i ii u uu rq lq ae e ee ai ao o oo au").split()))
INDEPENDENT.update({0x60: "rqq", 0x61: "lqq"})
SIGNS = dict(zip(range(0x3E, 0x4D), "aa i ii u uu rq rqq ae e ee ai ao o oo au".split()))
SIGNS.update({0x62: "lq", 0x63: "lqq"})
MODIFIERS = {0x01: "mq", 0x02: "mq", 0x03: "hq"}
NUKTA, VIRAMA = 0x3C, 0x4D
NUKTA_FORMS = {0x15: "kq", 0x16: "khq", 0x17: "gq", 0x1C: "z", 0x21: "dxq",
               0x22: "dxhq", 0x2B: "f", 0x2F: "yq"}

# Atomic letters written as consonant + virama (Bengali khanda ta,
# Malayalam chillus and dot reph).
DEAD_CONSONANTS = {
    0x09CE: 0x24, 0x0D54: 0x2E, 0x0D55: 0x2F, 0x0D56: 0x34, 0x0D7A: 0x23,
    0x0D7B: 0x28, 0x0D7C: 0x30, 0x0D7D: 0x32, 0x0D7E: 0x33, 0x0D7F: 0x15,
    0x0D4E: 0x30,
}

VOWELS = set("a aa i ii u uu rq rqq lq lqq ae e ee ai ao o oo au".split())
NON_CONSONANT = VOWELS | {"mq", "hq"}

# unvoiced -> (voiced, homorganic nasals)
TAMIL_VOICING = {"k": ("g", {"ng"}), "c": ("j", {"nj"}), "tx": ("dx", {"nx"}),
                 "t": ("d", {"n", "nd"}), "p": ("b", {"m"})}


def words_of(text, lang):
    """List of words; each word is a list of [phone, inherent] pairs."""
    text = unicodedata.normalize("NFC", text).replace("‌", "").replace("‍", "")
    base = BLOCKS[LANG_SCRIPT[lang]]
    words, cur = [], []
    offsets = []
    for ch in text:
        cp = ord(ch)
        if cp in DEAD_CONSONANTS:
            offsets += [DEAD_CONSONANTS[cp], VIRAMA]
        elif base <= cp < base + 0x80:
            offsets.append(cp - base)
        elif ch.isspace() or unicodedata.category(ch).startswith("P") or cp in (0x0964, 0x0965):
            offsets.append(None)
        else:
            raise ValueError(f"unexpected character U+{cp:04X} in {text!r}")
    i = 0
    while i < len(offsets):
        o = offsets[i]
        if o is None:
            if cur:
                words.append(cur)
                cur = []
            i += 1
            continue
        if o in CONSONANTS:
            phone = CONSONANTS[o]
            i += 1
            if i < len(offsets) and offsets[i] == NUKTA:
                phone = NUKTA_FORMS.get(o, phone)
                i += 1
            cur.append([phone, False])
            if i < len(offsets) and offsets[i] == VIRAMA:
                i += 1
            elif i < len(offsets) and offsets[i] in SIGNS:
                cur.append([SIGNS[offsets[i]], False])
                i += 1
            else:
                cur.append(["a", True])
            continue
        if o in INDEPENDENT:
            cur.append([INDEPENDENT[o], False])
        elif o in SIGNS:
            cur.append([SIGNS[o], False])
        elif o in MODIFIERS:
            cur.append([MODIFIERS[o], False])
        elif o in (NUKTA, VIRAMA):
            pass
        else:
            raise ValueError(f"offset {o:02X} has no phone")
        i += 1
    if cur:
        words.append(cur)
    return words


def delete_schwas(word):
    if word and word[-1][1]:
        word = word[:-1]
    k = len(word) - 1
    while k >= 0:
        if (word[k][1] and 2 <= k < len(word) - 2
                and word[k - 2][0] in VOWELS and word[k - 1][0] not in NON_CONSONANT
                and word[k + 1][0] not in NON_CONSONANT and word[k + 2][0] in VOWELS):
            del word[k]
        k -= 1
    return word


def voice_stops(word):
    src = [p for p, _ in word]
    out = list(src)
    for k in range(1, len(src)):
        rule = TAMIL_VOICING.get(src[k])
        if rule is None or src[k - 1] == src[k]:
            continue
        voiced, nasals = rule
        between_vowels = src[k - 1] in VOWELS and k + 1 < len(src) and src[k + 1] in VOWELS
        if src[k - 1] in nasals or between_vowels:
            out[k] = voiced
    return out


def phones(text, lang):
    result = []
    for word in words_of(text, lang):
        if lang in INDO_ARYAN:
            word = delete_schwas(word)
        ps = [p for p, _ in word]
        if lang == "tamil":
            ps = voice_stops(word)
        result += ps
    return result


SCHWA = [("hindi", w) for w in """
कमल नमक सड़क किताब लड़का समझ बदल सरकार अमर कलम घर दिल पानी बचपन रचना कमरा
अजगर सपना बहन मदद शहर नगर महल जनता करना चलना समय लगभग विकास भारत आदमी देवता
हलचल बरतन धड़कन सरल हिरन बादल चमक कसरत लड़की मकान उठना गरम नरम सुबह खटमल मगर
पलक कपड़ा
""".split()]

VIRAMA_WORDS = [("hindi", w) for w in """
क्या प्यार स्कूल विद्या पत्र शब्द मित्र धर्म कर्म स्वर ग्राम प्रेम क्रम स्थान अर्थ सत्य
ज्ञान बुद्ध व्यक्ति न्याय द्वार श्याम
""".split()] + [("hindi", "क्")] + [
    ("bengali", w) for w in "বক্তা স্কুল প্রেম উৎসব বিদ্যা".split()] + [
    ("gujarati", w) for w in "પ્રેમ શ્રી વિદ્યા સ્વર".split()] + [
    ("odia", w) for w in "ପ୍ରେମ ବିଦ୍ୟା".split()] + [
    ("telugu", w) for w in "ప్రేమ విద్య పద్యం సత్యం".split()] + [
    ("kannada", w) for w in "ಕನ್ನಡ ಪ್ರೇಮ ವಿದ್ಯೆ ಸ್ವರ".split()] + [
    ("malayalam", w) for w in "അവൻ വിദ്യ സ്നേഹം കൽ".split()] + [
    ("tamil", w) for w in "மக்கள் எண்ணம் சொல் கல்".split()]

TAMIL = [("tamil", w) for w in """
அடி அம்மா அப்பா தம்பி பாடம் பக்கம் காகம் மகன் கதை குடம் பட்டம் தங்கை பந்து வந்தான்
கண்டு நண்பன் படகு வீடு நாடு காடு பாட்டு கடல் உடல் பச்சை பஞ்சு இஞ்சி மஞ்சள் சிங்கம்
தங்கம் கொடி படி நடனம் பாதம் மாதம் காதல் இதயம் உதவி பகல் முகம் நகரம் மேகம் தபால்
கப்பல் உப்பு அம்பு கம்பு செம்பு கடிதம் பாகம் சக்கரம்
""".split()]

SETS = {"cls_schwa.tsv": SCHWA, "cls_virama.tsv": VIRAMA_WORDS, "cls_tamil_voicing.tsv": TAMIL}


def render(entries):
    lines = ["# word\tlanguage\tphones"]
    for lang, word in entries:
        lines.append(f"{word}\t{lang}\t{' '.join(phones(word, lang))}")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    # Spot checks that pin the rules themselves.
    assert phones("कमल", "hindi") == "k a m a l".split()
    assert phones("क्", "hindi") == ["k"]
    assert phones("அடி", "tamil") == "a dx i".split()
    bad = 0
    for name, entries in SETS.items():
        assert len(entries) == 50, (name, len(entries))
        text = render(entries)
        path = args.out_dir / name
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                print(f"{path}: differs from the reference parser", file=sys.stderr)
                bad += 1
        else:
            path.write_text(text, encoding="utf-8")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
