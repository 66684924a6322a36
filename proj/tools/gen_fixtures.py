#!/usr/bin/env python3
"""Generate the simulated shopping catalog, wiki corpus, and task files under data/.

The output is deterministic for a given --seed. Re-run after editing the pools
below and commit the regenerated JSON.
"""

import argparse
import json
import math
import random
from pathlib import Path

SCHEMA_VERSION = 1

CATEGORIES = {
    "camera tripod": [
        "quick release", "easy carry", "aluminum alloy", "lightweight", "panoramic head",
        "bluetooth remote", "carrying bag", "adjustable height", "non slip feet",
        "compact folding", "phone holder", "heavy duty",
    ],
    "running shoes": [
        "breathable mesh", "memory foam", "non slip sole", "wide fit", "lace up",
        "lightweight", "arch support", "waterproof", "reflective trim", "cushioned heel",
        "machine washable", "rubber outsole",
    ],
    "coffee maker": [
        "programmable timer", "stainless steel", "auto shutoff", "thermal carafe",
        "single serve", "reusable filter", "dishwasher safe", "compact size",
        "bpa free", "keep warm plate", "brew strength control", "large capacity",
    ],
    "hiking backpack": [
        "water resistant", "padded straps", "laptop sleeve", "hydration compatible",
        "rain cover", "lightweight", "chest strap", "hip belt", "multiple pockets",
        "ventilated back", "easy carry", "heavy duty",
    ],
    "wireless headphones": [
        "noise cancelling", "long battery life", "bluetooth connection", "foldable design",
        "built in microphone", "over ear", "deep bass", "fast charging",
        "carrying case", "memory foam", "touch control", "lightweight",
    ],
    "desk lamp": [
        "dimmable light", "usb charging port", "touch control", "adjustable arm",
        "eye caring", "energy saving", "color temperature modes", "auto timer",
        "compact folding", "metal base", "night light", "memory function",
    ],
    "yoga mat": [
        "non slip", "extra thick", "eco friendly", "carrying strap", "moisture resistant",
        "lightweight", "alignment lines", "tear resistant", "easy clean",
        "latex free", "double sided", "high density",
    ],
    "water bottle": [
        "vacuum insulated", "leak proof", "bpa free", "stainless steel", "wide mouth",
        "straw lid", "dishwasher safe", "sweat free", "carrying handle",
        "time marker", "easy carry", "large capacity",
    ],
    "phone case": [
        "shockproof", "slim fit", "wireless charging compatible", "raised edges",
        "kickstand", "card holder", "clear back", "anti scratch", "magnetic",
        "soft silicone", "drop protection", "screen protector",
    ],
    "office chair": [
        "lumbar support", "adjustable height", "breathable mesh", "padded armrests",
        "swivel base", "tilt lock", "headrest", "heavy duty", "easy assembly",
        "rolling casters", "memory foam", "high back",
    ],
}

BRANDS = [
    "Aldor", "Brisk", "Cobalt", "Dunmore", "Everly", "Fenwick", "Galeo", "Harlow",
    "Ionic", "Juniper", "Kestrel", "Lumen", "Marlow", "Norden", "Orrin", "Pike",
]
COLORS = ["black", "white", "gray", "navy", "green", "red", "beige"]
SIZES = ["small", "medium", "large"]
PER_CATEGORY = 30
TASKS_PER_LEVEL = 20
LEVELS = range(1, 7)


def model_code(rng, used):
    while True:
        code = (rng.choice("bcdfghjkmnpqrstvwxz") + rng.choice("bcdfghjkmnpqrstvwxz")
                + str(rng.randint(100, 999)))
        if code not in used:
            used.add(code)
            return code


def make_product(rng, pid, category, attrs, used_codes):
    brand = rng.choice(BRANDS)
    code = model_code(rng, used_codes)
    title = f"{brand} {code.upper()} {category.title()}"
    extras = sorted(a for a in attrs if a != category)
    if extras:
        desc = (f"This {category} from {brand} is built for everyday use. "
                f"Highlights include {', '.join(extras[:-1]) + ' and ' + extras[-1] if len(extras) > 1 else extras[0]}.")
    else:
        desc = f"This {category} from {brand} is built for everyday use."
    price = round(rng.uniform(12, 290), 2)
    return {
        "id": f"P{pid:04d}",
        "title": title,
        "attributes": sorted(attrs),
        "price": price,
        "options": {
            "color": sorted(rng.sample(COLORS, rng.randint(1, 3))),
            "size": sorted(rng.sample(SIZES, rng.randint(1, 2))),
        },
        "description": desc,
    }


def join_phrases(items):
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def shopping_instruction(category, required, cap):
    text = f"i am looking for a {category} with {join_phrases(required)}"
    if cap is not None:
        text += f", and price lower than {cap:.2f} dollars"
    return text


def build_shopping(rng):
    used_codes = set()
    products = []
    pid = 1
    for category, pool in CATEGORIES.items():
        for _ in range(PER_CATEGORY):
            n = rng.randint(4, 7)
            attrs = set(rng.sample(pool, n))
            attrs.add(category)
            products.append(make_product(rng, pid, category, attrs, used_codes))
            pid += 1

    def category_of(p):
        for c in CATEGORIES:
            if c in p["attributes"]:
                return c
        raise AssertionError(p)

    tasks = []
    distractors = []
    tid = 1
    for level in LEVELS:
        eligible = [p for p in products if len(p["attributes"]) >= level]
        for _ in range(TASKS_PER_LEVEL):
            target = rng.choice(eligible)
            category = category_of(target)
            required = sorted(rng.sample(target["attributes"], level))
            cap = None
            if rng.random() < 0.7:
                cap = math.ceil(target["price"] * rng.uniform(1.05, 1.5))
            if level == 3:
                # A purchasable decoy sharing exactly two of the three required attributes.
                dropped = rng.choice(required)
                kept = [a for a in required if a != dropped]
                pool = [a for a in CATEGORIES[category] + [category]
                        if a not in required]
                attrs = set(kept) | set(rng.sample(pool, 3))
                decoy = make_product(rng, 0, category, attrs, used_codes)
                distractors.append(decoy)
            tasks.append({
                "id": f"shop-{tid:04d}",
                "instruction": shopping_instruction(category, required, cap),
                "env_kind": "shopping",
                "complexity": level,
                "ground_truth": {
                    "target_product_id": target["id"],
                    "required_attributes": required,
                    **({"price_cap": float(cap)} if cap is not None else {}),
                },
            })
            tid += 1
    for decoy in distractors:
        decoy["id"] = f"P{pid:04d}"
        pid += 1
        products.append(decoy)
    return products, tasks


SYLLABLES = ["bar", "vel", "dor", "mir", "tan", "kos", "lun", "ser", "vik", "hal",
             "nor", "qua", "ren", "sol", "tor", "zan", "fel", "gri", "mon", "pal"]


def make_name(rng, used, parts=2):
    while True:
        name = "".join(rng.choice(SYLLABLES) for _ in range(parts)).capitalize()
        if name not in used:
            used.add(name)
            return name


def build_wiki(rng):
    used = set()
    languages = ["Velish", "Dornic", "Marran", "Sollic", "Kestic", "Tandish", "Orvian",
                 "Luneth", "Harric", "Zanese"]
    countries = []
    for lang in languages:
        countries.append({"name": make_name(rng, used, 3), "language": lang})
    rivers = [{"name": make_name(rng, used) + " River", "length": rng.randint(80, 2400)}
              for _ in range(10)]
    cities = []
    for i in range(20):
        country = countries[i % len(countries)]
        cities.append({
            "name": make_name(rng, used),
            "country": country,
            "river": rivers[i % len(rivers)],
            "founded": rng.randint(900, 1850),
        })
    for country in countries:
        country["capital"] = next(c for c in cities if c["country"] is country)
    professions = ["painter", "composer", "astronomer", "novelist", "architect",
                   "botanist", "poet", "engineer", "sculptor", "historian"]
    people = []
    for i in range(20):
        first = make_name(rng, used, 2)
        last = make_name(rng, used, 2)
        people.append({
            "name": f"{first} {last}",
            "birthplace": cities[(i * 7) % len(cities)],
            "profession": professions[i % len(professions)],
            "born": rng.randint(1600, 1980),
        })

    pages = {}
    for country in countries:
        pages[country["name"]] = [
            [f"{country['name']} is a sovereign country.",
             f"The capital of {country['name']} is {country['capital']['name']}.",
             f"The official language of {country['name']} is {country['language']}."],
            [f"{country['name']} is known for its mountain passes and coastal trade routes."],
        ]
    for river in rivers:
        through = [c["name"] for c in cities if c["river"] is river]
        pages[river["name"]] = [
            [f"The {river['name']} is a river with a length of {river['length']} kilometres.",
             f"The {river['name']} flows through {join_phrases(through)}."],
        ]
    for city in cities:
        pages[city["name"]] = [
            [f"{city['name']} is a city in {city['country']['name']}.",
             f"{city['name']} was founded in {city['founded']}.",
             f"The {city['river']['name']} flows through {city['name']}."],
            [f"{city['name']} hosts a yearly market festival in the old town."],
        ]
    for person in people:
        pages[person["name"]] = [
            [f"{person['name']} was a {person['profession']} born in {person['born']}.",
             f"{person['name']} was born in {person['birthplace']['name']}.",
             f"{person['name']} spent most of a long career travelling."],
        ]

    questions = {1: [], 2: [], 3: []}
    for city in cities:
        questions[1].append((f"In which country is the city of {city['name']}?",
                             city["country"]["name"]))
        questions[1].append((f"Which river flows through {city['name']}?", city["river"]["name"]))
        questions[2].append((f"What is the capital of the country where {city['name']} is located?",
                             city["country"]["capital"]["name"]))
        questions[2].append((f"What language is spoken in the country that contains {city['name']}?",
                             city["country"]["language"]))
    for person in people:
        questions[2].append((f"Which river flows through the birthplace of {person['name']}?",
                             person["birthplace"]["river"]["name"]))
        questions[3].append((f"What language is spoken in the country where {person['name']} was born?",
                             person["birthplace"]["country"]["language"]))
        questions[3].append((f"What is the capital of the country in which {person['name']} was born?",
                             person["birthplace"]["country"]["capital"]["name"]))

    tasks = []
    tid = 1
    for level in (1, 2, 3):
        picked = rng.sample(questions[level], 15)
        for q, a in picked:
            tasks.append({
                "id": f"wiki-{tid:04d}",
                "instruction": q,
                "env_kind": "wikiqa",
                "complexity": level,
                "ground_truth": {"gold_answer": a},
            })
            tid += 1
    return pages, tasks


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    parser.add_argument("--seed", type=int, default=20230815)
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rng = random.Random(args.seed)
    products, shop_tasks = build_shopping(rng)
    pages, wiki_tasks = build_wiki(rng)

    def dump(name, obj):
        (out / name).write_text(json.dumps(obj, indent=1, ensure_ascii=False) + "\n")

    dump("catalog.json", {"schema_version": SCHEMA_VERSION, "products": products})
    dump("shopping_tasks.json", {"schema_version": SCHEMA_VERSION, "tasks": shop_tasks})
    dump("wiki_corpus.json", {"schema_version": SCHEMA_VERSION, "pages": pages})
    dump("wiki_tasks.json", {"schema_version": SCHEMA_VERSION, "tasks": wiki_tasks})
    print(f"{len(products)} products, {len(shop_tasks)} shopping tasks, "
          f"{len(pages)} wiki pages, {len(wiki_tasks)} wiki tasks")


if __name__ == "__main__":
    main()
