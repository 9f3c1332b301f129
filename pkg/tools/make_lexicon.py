#!/usr/bin/env python3
"""Regenerate the bundled POS lexicon (src/termscape/data/lexicon.tsv).

The tagger needs three things from the lexicon: function words and verbs
mapped to OTHER so they terminate noun-phrase runs, common adjectives
mapped to ADJ (including ones no suffix heuristic catches), and a small
set of nouns that would otherwise be mis-tagged by the heuristics
(e.g. -ly nouns like "family").  Everything else falls through to the
suffix rules and the default-NOUN rule at runtime.

Deliberately NOT listed: words that are common nouns in scientific
abstracts even when they double as verbs (study, result, increase, use,
...).  Tagging those as nouns lets the term-selection stage filter the
general ones statistically instead of silently losing them here.

Run from the repository root:  python tools/make_lexicon.py
"""

from __future__ import annotations

from pathlib import Path

FUNCTION_WORDS = """
a an the this that these those some any each every either neither no
i you he she it we they me him her us them my your his its our their
mine yours hers ours theirs myself yourself himself herself itself
ourselves themselves who whom whose which what when where why how
and or but nor so yet both all most many much few little more less
least fewer several various such same other another only own very
too quite rather almost about above across after against along among
around as at before behind below beneath beside besides between beyond
by despite down during except for from in inside into like near of off
on onto out outside over past per since through throughout till to
toward towards under underneath until unto up upon via with within
without if unless although though because while whereas whether once
than then there here now never always often sometimes seldom rarely
again also just even still already yt ever hence thus therefore
however moreover furthermore nevertheless nonetheless meanwhile
otherwise instead indeed perhaps maybe not none nothing nobody anyone
anything everyone everything someone something somewhat whenever
wherever whatever whichever whoever et al etc ie eg vs versus

one two three four five six seven eight nine ten eleven twelve
thirteen fourteen fifteen twenty thirty forty fifty sixty seventy
eighty ninety hundred thousand million billion first second third
fourth fifth sixth seventh eighth ninth tenth half twice

am is are was were be been being have has had having do does did done
doing will would shall should may might must can could need dare ought
""".split()

# Irregular verb forms that the inflection rules below cannot produce.
IRREGULAR_VERB_FORMS = """
arose arisen ate eaten bore borne became become began begun bent bound
bled bought brought built came chose chosen dealt drew drawn drank
drunk drove driven fell fallen felt fought flew flown forgot forgotten
froze frozen gave given went gone grew grown heard held hid hidden
kept knew known laid lay lain led left lent lost made meant met paid
proved proven put ran rose risen said saw seen sent set shook shaken
shed shone showed shown shrank shrunk sang sung sank sunk sat slept
sold sought spent split spread sprang stood stuck struck swelled
swollen swam swum took taken taught thought threw thrown understood
underwent undergone wore worn withdrew withdrawn won wrote
written woke woken
""".split()

VERB_LEMMAS = """
accept accompany achieve acquire act adapt add address adhere adjust
administer admit adopt advance advise affect agree  allocate allow
alter analyze analyse appear apply appreciate argue arise arrange
arrest ascertain ask assert assess assign assist assume attain attempt
attend attenuate attribute augment avoid  bear become begin behave
believe belong bind bleed  blunt boost bring build calculate call
carry categorize cease characterize choose circulate cite
clarify classify close collect combine come comment communicate
compare compensate compete compile complete complicate comprise
compute conclude conduct confer confine confirm conform confound
consider consist constitute construct consult consume contain
contradict contribute convert convey convince cope correspond
corroborate counteract create culminate cultivate deal decline
dedicate deem define delineate deliver demonstrate denote depend
depict deplete derive describe deserve designate detect deteriorate
determine develop deviate devise diagnose dictate differ differentiate
diminish disappear discard discern disclose discontinue discover
discuss dislodge dispose disrupt disseminate dissolve distinguish
distribute diverge divide  dominate double drink drive dwell
eat economize elaborate elicit eliminate elucidate emanate embark
embrace emerge emphasize employ enable encode encompass encounter
encourage endorse engage enhance enlarge enroll ensue ensure entail
enter enumerate envisage equal equate eradicate establish estimate
evaluate evolve exacerbate examine exceed exclude excrete execute
exemplify exert exhibit exist expand expect  explain
explore expose express extend extract facilitate fail fall favor
feel fight find fit fly  follow foresee formulate foster
fulfill  gather generate get give go govern grow happen harbor
hear help hide highlight hinder hold hypothesize identify ignore
illustrate imitate immerse impair impede implement implicate imply
import impose improve inactivate incline include incorporate incur
indicate induce infer infuse inhabit inhibit initiate inject
inoculate inquire insert insist integrate intend interact interfere
interpret interrupt intervene interview introduce invade invalidate
investigate invoke involve irradiate isolate justify keep kill know
lack lead learn leave lend lie   live localize locate lose
lower magnify maintain make manage manifest manipulate mature may
mean mediate meet mention metabolize migrate mimic minimize mitigate
moderate modify modulate  motivate move multiply necessitate
negate neglect negotiate normalize note notice notify obscure observe
obstruct obtain occur offer omit operate oppose opt optimize organize
originate overcome overestimate overlap overlook owe own participate
pay penetrate perceive perform permit persist pertain pinpoint play
  pose possess postulate precede precipitate preclude
predict predispose prefer prepare prescribe present preserve presume
prevail prevent proceed produce prohibit proliferate promote propose
prove provide publish purport pursue put qualify quantify raise
randomize  reach react read realize reassess recapitulate receive
recognize recommend reconcile reconstruct recover recruit rectify
recur reduce refer refine reflect refrain regain regard regress
regulate reinforce reiterate relate relieve rely remain remark remind
remove render repeat replace replicate represent reproduce require
resemble reside resolve respond restore restrict  retain
retrieve reveal reverse revert revise run say scrutinize see seek
seem select sell send serve set shake share shed shine show shrink
signify simulate sing sink sit situate sleep speculate spend split
spread stabilize stand  stimulate stipulate strengthen
strike strive  submit subside substantiate substitute subtract
succeed suffer suffice suggest summarize supervene supplement support
suppose suppress surmise surpass surround survive suspect sustain
swell swim synthesize tackle take talk teach tend terminate think
threaten throw tolerate transcend transfer transform translate
transmit treat typify underestimate undergo underlie underline
undermine underpin understand undertake unravel unveil uphold
upregulate utilize vaccinate validate vary ventilate verify vindicate
visualize wane want warrant weaken wear weigh widen win wish withdraw
withstand witness wonder worsen write
""".split()

ADJECTIVES = """
able abnormal absent abundant accurate active acute adequate adverse
aged aggressive alive ambiguous ample ancient apparent appropriate
arterial atrial available average aware bad basic benign big bilateral
black blind blue brief bright broad brown busy calm capable cardiac
careful cheap chief chronic clean clear clever clinical cold collective
comparable complex comprehensive concomitant concurrent congenital
conscious conservative considerable consistent constant contemporary
contralateral conventional coronary correct costly crucial cold
cumulative current daily dark dead deep definite deliberate dense
dependent diagnostic difficult diffuse direct dirty distal distinct
diverse dominant double dry dual due duodenal early easy effective
efficient elderly electric elevated eligible empty entire equal
equivalent essential evident exact excellent excessive expensive
experimental explicit extensive external extreme faint fair false
familial fast fatal favorable feasible female few fine firm flat
flexible fluorescent fond foreign formal fragile free frequent fresh
full functional fundamental future general gastric genetic gentle
genuine global good gradual grave gray great green gross happy hard
harmful healthy heavy hepatic high homogeneous hot huge human humoral
ideal idiopathic ill immediate immense imminent immune implicit
important inadequate incremental independent indirect individual
inferior infrequent inherent initial innate inpatient insufficient
intact integral intense intermediate internal intrinsic invasive
inverse ipsilateral joint key large late lateral lean left lethal
light likely limited liquid little live local long loose loud low
lower lumbar main major male malignant marked maximal mean mechanical
medial median mediastinal medical mental mild minimal minor moderate
modest moist molecular multiple mutual mutant narrow native natural
nearby necessary negative nervous neural neutral new nice normal
notable novel obese objective oblique obvious occult old open optimal
oral ordinary outer overall overt painful pale parallel paramount
partial particular passive past peak perioperative peripheral
permanent persistent personal pertinent pharmacological physical
plain plausible pleural polar poor portal positive possible
posterior postoperative potent potential powerful practical precise
pregnant premature preoperative present previous primary principal
prior private probable profound prolonged prominent prompt prone
proper prospective proximal public pulmonary pure quick quiet random
rapid rare raw ready real recent recurrent red refractory regional
regular relative relevant reliable remote renal resistant respective
responsible restless retrospective rich right rigid robust rough
round routine royal rural sad safe salient same scarce secondary
sedentary selective senior sensitive separate septic serious severe
sharp short sick significant silent similar simple simultaneous
single slight slow small smooth soft sole solid sore sound spare
sparse spatial special specific spinal spontaneous stable standard
steady steep sterile stiff still straight strange strict strong
subsequent substantial subtle sufficient suitable superficial
superior supine supplementary susceptible sustained swift symptomatic
systemic systolic tall temporal temporary tender tense terminal
thick thin third thorough tight tiny tired total tough toxic
traditional transient trivial true turbulent twofold typical
ulterior ultimate unable unclear uncomfortable uncommon underlying
uniform unilateral unique unknown unlikely unstable unusual upper
upright urgent useful useless usual vague valid valuable variable
vascular vast venous viable vigorous viral visible vital vivid warm
weak wet white whole wide widespread wild worse worst wrong yellow
young
""".split()

# Nouns the suffix heuristics would otherwise mis-tag: -ly looks
# adverbial; -al/-ic/-ive look adjectival.  Dual-use words (potential,
# objective) are tagged NOUN because a noun reading keeps both "action
# potential" and "potential confounder" extractable, while an adjective
# reading loses the head-noun usage entirely.  Only singulars need
# listing; plurals never match the adjective suffixes.
PROTECTED_NOUNS = """
family families assembly assemblies anomaly anomalies supply supplies
monopoly italy butterfly reply
trial survival interval material potential goal signal animal hospital
journal canal metal crystal meal arrival removal approval withdrawal
renewal denial funeral mineral individual
clinic topic statistic characteristic antibiotic epidemic pandemic
diabetic analgesic anesthetic diuretic
objective alternative incentive additive derivative perspective
initiative representative
""".split()


def verb_forms(base: str) -> set[str]:
    forms = {base}
    if base.endswith("e") and not base.endswith(("ee", "ye", "oe")):
        forms.add(base + "s")
        forms.add(base + "d")
        forms.add(base[:-1] + "ing")
    elif base.endswith("y") and len(base) > 2 and base[-2] not in "aeiou":
        forms.add(base[:-1] + "ies")
        forms.add(base[:-1] + "ied")
        forms.add(base + "ing")
    elif base.endswith(("s", "x", "z", "ch", "sh")):
        forms.add(base + "es")
        forms.add(base + "ed")
        forms.add(base + "ing")
    else:
        forms.add(base + "s")
        forms.add(base + "ed")
        forms.add(base + "ing")
        # consonant-vowel-consonant lemmas double the final letter
        if (
            len(base) >= 3
            and base[-1] not in "aeiouwxy"
            and base[-2] in "aeiou"
            and base[-3] not in "aeiou"
        ):
            forms.add(base + base[-1] + "ed")
            forms.add(base + base[-1] + "ing")
    return forms


def build() -> dict[str, str]:
    lexicon: dict[str, str] = {}
    for word in FUNCTION_WORDS:
        lexicon[word] = "OTHER"
    for word in IRREGULAR_VERB_FORMS:
        lexicon.setdefault(word, "OTHER")
    for lemma in VERB_LEMMAS:
        for form in verb_forms(lemma):
            lexicon.setdefault(form, "OTHER")
    for word in ADJECTIVES:
        lexicon[word] = "ADJ"  # adjective reading wins over a verb reading
    for word in PROTECTED_NOUNS:
        lexicon[word] = "NOUN"
    return lexicon


def main() -> None:
    lexicon = build()
    out = Path(__file__).resolve().parent.parent / "src" / "termscape" / "data" / "lexicon.tsv"
    lines = [f"{word}\t{tag}" for word, tag in sorted(lexicon.items())]
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} entries to {out}")


if __name__ == "__main__":
    main()
