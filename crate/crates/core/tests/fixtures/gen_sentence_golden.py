"""Regenerates sentence_golden.json from the boundary rule.

A sentence ends after one of । ॥ . ? ! when the next character is
whitespace or the end of input, and at every newline. Spans are trimmed
and empty spans dropped. Offsets are codepoint offsets.
"""
import json
import re

BOUNDARY = re.compile(r"[।॥.?!](?=\s|$)|\n")

INPUTS = [
    "मी घरी जातो. तो शाळेत गेला.",
    "मी घरी जातो",
    "",
    "   ",
    "तो आला। ती गेली।",
    "राम वनात गेला॥ सीता त्याच्या मागे गेली॥",
    "तू कुठे जातोस? मी बाजारात जातो.",
    "किती छान! खरंच छान!",
    "पहिली ओळ\nदुसरी ओळ",
    "पहिली ओळ\n\n\nदुसरी ओळ",
    "डॉ. पाटील आले.",
    "किंमत ३.५ रुपये आहे.",
    "हे खरे आहे?! नक्की?",
    "...",
    "अरे... काय झाले?",
    "  सुरुवातीला जागा. शेवटी जागा.  ",
    "तो म्हणाला.त्यानंतर गेला.",
    "www.example.com पहा. छान आहे.",
    "एक। दोन। तीन।",
    "एक।दोन। तीन",
    "प्रश्न?उत्तर नाही? ठीक.",
    "हे वाक्य\tटॅबने वेगळे. पुढे",
    "मी घरी जातो।\nतो शाळेत गेला।",
    "मी मराठी बोलतो. I speak English. आपण?",
    "१. पहिला मुद्दा २. दुसरा मुद्दा",
    "शेवट!",
    "!",
    "? ? ?",
    "वाक्य १। वाक्य २॥ वाक्य ३.",
    "तो आला ।",
    "नमस्कार मंडळी, कसे आहात? मजेत.",
    "ई-मेल पाठवला. उत्तर आले नाही!",
    "\nसुरुवातीला नवी ओळ.",
    "शेवटी नवी ओळ.\n",
    "“उद्धरण” संपले. पुढील वाक्य",
    "(कंसात वाक्य.) बाहेर वाक्य.",
    "तारीख १२.०५.२०२३ आहे. ठीक.",
    "अ. ब. क.",
    "फक्त एक शब्द",
    "बरं!!! ठीक आहे...",
    "हो? नाही! कदाचित.",
    "सुप्रभात।शुभ दिवस।",
    "मी येतो,\nतू थांब.",
    "ती हसली। \t तो रडला।",
    "पाणी = H2O. ठीक?",
    "Mr. Smith आले. ते गेले.",
    "अंक 3.14 आहे! बरोबर?",
    "॥ श्री ॥ गणेशाय नमः ॥",
    "एकदा काय झाले? राजा म्हणाला। \"चला.\" सगळे गेले",
    "शेवटचे वाक्य.   ",
]
assert len(INPUTS) == 50, len(INPUTS)


def split(text):
    spans, start = [], 0
    ends = [m.end() for m in BOUNDARY.finditer(text)] + [len(text)]
    for end in ends:
        seg = text[start:end]
        lead = len(seg) - len(seg.lstrip())
        body = seg.strip()
        if body:
            s = start + lead
            spans.append({"text": body, "start": s, "end": s + len(body)})
        start = end
    return spans


cases = [{"input": t, "expected": split(t)} for t in INPUTS]
with open("sentence_golden.json", "w", encoding="utf-8") as f:
    json.dump(cases, f, ensure_ascii=False, indent=1)
    f.write("\n")
