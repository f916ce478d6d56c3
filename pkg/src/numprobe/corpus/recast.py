"""Rule-based rewriting of question/answer pairs into declarative hypotheses.

Eight templates are recognised: yes/no, who, what, when, where, which,
how many and how much; "which"/"what" may follow a preposition ("In which
year ...").  Each rewrite appends the rules it fired to a trace so
a caller can see why a sentence came out the way it did.  Anything outside the
templates raises ``UnsupportedQuestionForm``; nothing is guessed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..numparse import NumParseError, parse_date
from .errors import UnsupportedQuestionForm

BE = {"is", "are", "was", "were"}
DO = {"do", "does", "did"}
HAVE = {"has", "have", "had"}
MODAL = {"can", "could", "will", "would", "should", "may", "might", "must", "shall"}
AUX = BE | DO | HAVE | MODAL

DETERMINERS = {"the", "a", "an", "this", "that", "these", "those", "his", "her", "its", "their",
               "our", "my", "your", "each", "every", "all", "both"}
PARTICLES = {"in", "up", "out", "off", "down", "back", "over", "away", "on"}
PREPOSITIONS = {"between", "in", "on", "at", "over", "under", "above", "below", "before", "after",
                "from", "for", "with", "by", "during", "since", "until", "about", "around", "than",
                "into", "within", "to", "per", "among", "near", "like"}
COMPARATIVES = {"more", "less", "fewer", "greater", "higher", "lower", "bigger", "smaller", "larger",
                "longer", "shorter", "taller", "older", "younger", "earlier", "later", "faster",
                "slower", "heavier", "lighter"}
PARTICIPLES = {"born", "held", "built", "made", "won", "written", "given", "taken", "known", "seen",
               "sold", "founded", "shown", "chosen", "drawn", "driven", "grown", "run", "paid", "led"}
TIME_NOUNS = {"year", "month", "day", "date", "season", "time", "decade", "century", "quarter"}
PLACE_NOUNS = {"city", "country", "place", "location", "venue", "stadium", "state", "town"}

IRREGULAR_PAST = {
    "be": "was", "become": "became", "begin": "began", "bring": "brought", "build": "built",
    "buy": "bought", "come": "came", "do": "did", "draw": "drew", "drive": "drove", "eat": "ate",
    "fall": "fell", "feel": "felt", "find": "found", "fly": "flew", "get": "got", "give": "gave",
    "go": "went", "grow": "grew", "have": "had", "hold": "held", "keep": "kept", "know": "knew",
    "lead": "led", "leave": "left", "lose": "lost", "make": "made", "meet": "met", "pay": "paid",
    "put": "put", "read": "read", "ride": "rode", "rise": "rose", "run": "ran", "say": "said",
    "see": "saw", "sell": "sold", "send": "sent", "set": "set", "shoot": "shot", "sing": "sang",
    "sit": "sat", "speak": "spoke", "spend": "spent", "stand": "stood", "swim": "swam",
    "take": "took", "teach": "taught", "tell": "told", "think": "thought", "throw": "threw",
    "win": "won", "write": "wrote", "cost": "cost", "hit": "hit", "beat": "beat", "cut": "cut",
    "let": "let", "shut": "shut", "split": "split", "spread": "spread", "bear": "bore",
    "choose": "chose", "forget": "forgot", "hang": "hung", "hear": "heard", "lay": "laid",
    "light": "lit", "mean": "meant", "overtake": "overtook", "seek": "sought", "shine": "shone",
    "sleep": "slept", "steal": "stole", "strike": "struck", "wear": "wore",
}

# base verbs the subject detector recognises after do-support
KNOWN_VERBS = set(IRREGULAR_PAST) | {
    "direct", "earn", "gross", "release", "play", "score", "receive", "produce", "turn", "reach",
    "last", "record", "finish", "join", "star", "appear", "open", "rank", "defeat", "increase",
    "decrease", "generate", "employ", "report", "attend", "contain", "own", "sign", "debut",
    "retire", "host", "collect", "travel", "visit", "order", "need", "use", "want", "cover",
    "move", "start", "end", "serve", "marry", "die", "live", "work", "compete", "represent",
    "list", "raise", "borrow", "invest", "launch", "achieve", "register", "weigh", "measure",
    "hire", "plant", "bake", "pick", "study", "count", "save", "spend", "deliver", "ship",
    "attract", "draw", "total", "average", "add", "land", "graduate", "found", "establish",
}


def past_tense(verb: str) -> str:
    low = verb.lower()
    if low in IRREGULAR_PAST:
        return IRREGULAR_PAST[low]
    if low.endswith("e"):
        return low + "d"
    if re.search(r"[^aeiou]y$", low):
        return low[:-1] + "ied"
    if re.search(r"(?:^|[^aeiou])[aeiou][bdgmnprt]$", low) and len(low) <= 4:
        return low + low[-1] + "ed"
    return low + "ed"


def third_person(verb: str) -> str:
    low = verb.lower()
    if low == "have":
        return "has"
    if low in ("do", "go"):
        return low + "es"
    if re.search(r"(?:s|x|z|ch|sh)$", low):
        return low + "es"
    if re.search(r"[^aeiou]y$", low):
        return low[:-1] + "ies"
    return low + "s"


def _inflect(aux: str, verb: str) -> str:
    aux = aux.lower()
    if aux == "did":
        return past_tense(verb)
    if aux == "does":
        return third_person(verb)
    return verb.lower()


@dataclass
class RecastResult:
    sentence: str
    trace: list[str] = field(default_factory=list)


_TOKEN = re.compile(r"\S+")


def _tokens(text: str) -> list[str]:
    return _TOKEN.findall(text)


def _cap(s: str) -> str:
    return s[:1].upper() + s[1:] if s else s


def _lower_first(tok: str) -> str:
    """Lowercase a sentence-initial word unless it looks like a name or acronym."""
    if tok.lower() in AUX or tok.lower() in DETERMINERS or tok.lower() in {"how", "what", "who", "which",
                                                                             "when", "where", "there"}:
        return tok.lower()
    return tok


def _join(*parts) -> str:
    return " ".join(p for p in parts if p)


def _is_numberish(tok: str) -> bool:
    return bool(re.match(r"^[$€£¥₹]?-?\d", tok))


def _subject_end_be(toks: list[str]) -> int:
    """Index where the predicate starts after an inverted form of *be*."""
    for i in range(1, len(toks)):
        low = toks[i].lower().strip(",")
        prev = toks[i - 1].lower()
        if low in PREPOSITIONS and low != "of":
            return i
        if low in COMPARATIVES or (i + 1 < len(toks) and toks[i + 1].lower() == "than"):
            return i
        if low in ("a", "an", "not") or _is_numberish(low):
            return i
        if (low.endswith("ed") or low.endswith("en")) and prev not in DETERMINERS and len(low) > 3 \
                and low not in ("ten", "seven", "eleven", "men", "women", "children", "garden", "often"):
            return i
        if low == "the" and prev not in ("of", "and"):
            return i
    raise UnsupportedQuestionForm("cannot find where the predicate starts")


def _split_subject_verb(toks: list[str]) -> tuple[list[str], str, list[str]]:
    """Split ``subject verb rest`` after do-support or a modal."""
    for i in range(1, len(toks)):
        if toks[i].lower() in KNOWN_VERBS and toks[i - 1].lower() not in DETERMINERS:
            return toks[:i], toks[i], toks[i + 1:]
    # fallback: a capitalised name run is the subject
    i = 0
    while i < len(toks) and (toks[i][:1].isupper() or toks[i] in ("of", "'s")):
        i += 1
    if 0 < i < len(toks):
        return toks[:i], toks[i], toks[i + 1:]
    raise UnsupportedQuestionForm("cannot locate the main verb")


def _rest_with_particle(rest: list[str]) -> tuple[list[str], list[str]]:
    """Split a trailing verb particle ("bring in") from the rest of the clause."""
    if len(rest) == 1 and rest[0].lower() in PARTICLES:
        return rest, []
    return [], rest


def _date_preposition(answer: str) -> str:
    try:
        d = parse_date(answer)
        return "in" if d.day is None else "on"
    except NumParseError:
        pass
    if re.fullmatch(r"\d{4}s?", answer.strip()):
        return "in"
    if re.fullmatch(r"\d{1,2}:\d{2}.*", answer.strip()):
        return "at"
    low = answer.lower()
    if re.search(r"\b(january|february|march|april|may|june|july|august|september|october|november|"
                 r"december|spring|summer|autumn|fall|winter)\b", low) and not re.search(r"\d{1,2}(st|nd|rd|th)?\b.*\d{4}", low):
        return "in"
    return "on"


def recast_qa_to_nli(question: str, answer: str) -> str:
    return recast_with_trace(question, answer).sentence


def recast_with_trace(question: str, answer: str) -> RecastResult:
    q = " ".join((question or "").split())
    answer = (answer or "").strip()
    if not q or not answer:
        raise UnsupportedQuestionForm("empty question or answer")
    if not q.endswith("?"):
        raise UnsupportedQuestionForm("not a question")
    toks = _tokens(q[:-1].rstrip())
    if not toks:
        raise UnsupportedQuestionForm("empty question")
    res = RecastResult("")
    first = toks[0].lower()
    if first in AUX:
        body = _yes_no(toks, answer, res)
    elif first == "how" and len(toks) > 1 and toks[1].lower() in ("many", "much"):
        body = _how_quantity(toks, answer, res)
    elif first == "how" and len(toks) > 2 and toks[2].lower() in BE:
        res.trace.append("how-adj-be")
        subj = toks[3:]
        if not subj:
            raise UnsupportedQuestionForm("how-adjective question without subject")
        body = _join(" ".join(subj), toks[2].lower(), answer)
    elif first in ("who", "what", "which", "when", "where"):
        body = _wh(toks, answer, res)
    elif first in PREPOSITIONS and len(toks) > 2 and toks[1].lower() in ("which", "what"):
        # "In which year did Nadal turn pro?" -> "Nadal turned pro in 2001."
        res.trace.append(f"fronted-{first}")
        body = _wh(toks[1:], answer, res, fronted=first)
    else:
        raise UnsupportedQuestionForm(f"unsupported question word {toks[0]!r}")
    res.trace.append("terminal-period")
    res.sentence = _cap(body.strip()) + "."
    return res


def _yes_no(toks, answer, res) -> str:
    polarity = answer.strip().lower().rstrip(".!")
    if polarity not in ("yes", "no", "true", "false"):
        raise UnsupportedQuestionForm("yes/no question needs a yes/no answer")
    negate = polarity in ("no", "false")
    aux, rest = toks[0].lower(), toks[1:]
    if not rest:
        raise UnsupportedQuestionForm("nothing after the auxiliary")
    if aux in BE:
        cut = _subject_end_be(rest)
        res.trace.append(f"yes-no-be(subject={' '.join(rest[:cut])!r})")
        subj, pred = rest[:cut], rest[cut:]
        verb = aux + (" not" if negate else "")
        return _join(" ".join([_lower_first(subj[0])] + subj[1:]), verb, " ".join(pred))
    subj, verb, tail = _split_subject_verb(rest)
    res.trace.append(f"yes-no-{'do' if aux in DO else 'aux'}(subject={' '.join(subj)!r}, verb={verb!r})")
    subj_text = " ".join([_lower_first(subj[0])] + subj[1:])
    if aux in DO:
        vp = f"{aux} not {verb.lower()}" if negate else _inflect(aux, verb)
    else:
        vp = f"{aux} not {verb}" if negate else f"{aux} {verb}"
    if negate:
        res.trace.append("negate")
    return _join(subj_text, vp, " ".join(tail))


def _how_quantity(toks, answer, res) -> str:
    kind = toks[1].lower()
    i = 2
    noun = []
    while i < len(toks) and toks[i].lower() not in AUX:
        noun.append(toks[i])
        i += 1
    if i >= len(toks):
        raise UnsupportedQuestionForm(f"how {kind}: no auxiliary found")
    aux = toks[i].lower()
    after = toks[i + 1:]
    noun_text = " ".join(noun)
    if after and after[0].lower() == "there" and aux in BE:
        res.trace.append(f"how-{kind}-there")
        return _join("there", aux, answer, noun_text, " ".join(after[1:]))
    if aux in DO or aux in MODAL or aux in HAVE:
        subj, verb, tail = _split_subject_verb(after)
        particle, tail = _rest_with_particle(tail)
        res.trace.append(f"how-{kind}-object(subject={' '.join(subj)!r}, verb={verb!r})")
        if aux in DO and verb.lower() == "have" and not noun:
            raise UnsupportedQuestionForm("how much ... have without a noun")
        vp = _inflect(aux, verb) if aux in DO else f"{aux} {verb}"
        subj_text = " ".join([_lower_first(subj[0])] + subj[1:])
        return _join(subj_text, vp, " ".join(particle), answer, noun_text, " ".join(tail))
    # noun phrase is the subject: "How many pizzas were sold on Monday?"
    if noun:
        res.trace.append(f"how-{kind}-subject")
        return _join(answer, noun_text, aux, " ".join(after))
    # "How much is the budget?"
    if aux in BE and after:
        res.trace.append(f"how-{kind}-be")
        return _join(" ".join([_lower_first(after[0])] + after[1:]), aux, answer)
    raise UnsupportedQuestionForm(f"unsupported how {kind} form")


def _wh(toks, answer, res, fronted: str | None = None) -> str:
    wh = toks[0].lower()
    rest = toks[1:]
    if not rest:
        raise UnsupportedQuestionForm("bare wh-word")
    noun = []
    if wh in ("what", "which"):
        while rest and not _looks_verbal(rest[0], first=not noun):
            noun.append(rest[0])
            rest = rest[1:]
    if not rest:
        raise UnsupportedQuestionForm("wh-question without a verb")
    head = rest[0].lower()
    noun_low = {t.lower() for t in noun}
    timeish = wh == "when" or bool(noun_low & TIME_NOUNS)
    placeish = wh == "where" or bool(noun_low & PLACE_NOUNS)
    if fronted and not noun:
        raise UnsupportedQuestionForm(f"{fronted!r} {wh} without a noun")

    if head in BE:
        after = rest[1:]
        if not after:
            raise UnsupportedQuestionForm("wh-be without a complement")
        participles = [_is_participle(t) for t in after]
        if noun and not fronted and (participles[0] or (after[0].lower() in DETERMINERS and not any(participles))):
            # the wh-phrase is the subject: "Which athlete was born in 1981?", "Which film was the best?"
            res.trace.append(f"{wh}-be-subject")
            return _join(answer, head, " ".join(after))
        if timeish or placeish or fronted:
            # "When was Hulk released?" -> "Hulk was released on <answer>."
            cut = _passive_split(after)
            subj, pred = after[:cut], after[cut:]
            prep = fronted or ("in" if placeish else _date_preposition(answer))
            res.trace.append(f"{wh}-be-{_slot(placeish, timeish)}(subject={' '.join(subj)!r})")
            return _join(" ".join([_lower_first(subj[0])] + subj[1:]), head, " ".join(pred), prep, answer)
        if len(after) >= 2 and participles[-1]:
            # "What was released?" style passives with the wh-phrase as subject
            res.trace.append(f"{wh}-be-passive-subject")
            return _join(answer, head, " ".join(after))
        res.trace.append(f"{wh}-be-copula")
        subj_text = " ".join([_lower_first(after[0])] + after[1:])
        return _join(subj_text, head, answer)

    if head in HAVE and noun:
        # "Which film had the highest box office?": main-verb *have* unless a participle follows
        try:
            subj, verb, tail = _split_subject_verb(rest[1:])
        except UnsupportedQuestionForm:
            res.trace.append(f"{wh}-subject-have")
            return _join(answer, " ".join(rest))

    if head in DO or head in MODAL or head in HAVE:
        after = rest[1:]
        subj, verb, tail = _split_subject_verb(after)
        particle, tail = _rest_with_particle(tail)
        vp = _inflect(head, verb) if head in DO else f"{head} {verb}"
        subj_text = " ".join([_lower_first(subj[0])] + subj[1:])
        if timeish or placeish or fronted:
            prep = fronted or ("in" if placeish else _date_preposition(answer))
            res.trace.append(f"{wh}-do-{_slot(placeish, timeish)}(subject={' '.join(subj)!r}, verb={verb!r})")
            return _join(subj_text, vp, " ".join(particle), " ".join(tail), prep, answer)
        res.trace.append(f"{wh}-do-object(subject={' '.join(subj)!r}, verb={verb!r})")
        return _join(subj_text, vp, " ".join(particle), answer, " ".join(tail))

    if wh in ("when", "where"):
        raise UnsupportedQuestionForm(f"{wh} without an auxiliary")
    # wh-phrase is the subject: "Who directed Hulk?"
    res.trace.append(f"{wh}-subject")
    return _join(answer, " ".join(rest))


def _is_participle(tok: str) -> bool:
    low = tok.lower()
    return low in PARTICIPLES or (low.endswith("ed") and len(low) > 3 and low not in ("red", "bed", "need", "speed"))


def _slot(placeish: bool, timeish: bool) -> str:
    return "place" if placeish else "time" if timeish else "pp"


def _looks_verbal(tok: str, first: bool) -> bool:
    low = tok.lower()
    if low in AUX or low in KNOWN_VERBS or low in IRREGULAR_PAST.values():
        return not (first and low in TIME_NOUNS | PLACE_NOUNS)
    return not first and low.endswith("ed")


def _passive_split(after: list[str]) -> int:
    """Subject/participle boundary in "<subject> <participle> ..."."""
    for i in range(1, len(after)):
        low = after[i].lower()
        if low.endswith("ed") or low.endswith("en") or low in IRREGULAR_PAST.values() \
                or low in PREPOSITIONS or low in PARTICIPLES:
            return i
    return len(after)
