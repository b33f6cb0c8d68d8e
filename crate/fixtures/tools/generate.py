"""Regenerates the bundled fixtures. Deterministic; run from any directory.

    python3 fixtures/tools/generate.py
"""
import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DIM = 16

CLUSTERS = {
    "life": ["life", "expectancy", "longevity", "lifespan", "survival", "health", "living", "age"],
    "death": ["death", "mortality", "dying", "fatality", "casualty", "killed", "perished"],
    "population": ["population", "habitants", "people", "inhabitants", "demographic", "citizen", "resident"],
    "child": ["child", "children", "infant", "baby", "newborn", "youth"],
    "income": ["income", "wage", "earnings", "salary", "wealth", "prosperity", "gdp"],
    "peak": ["peak", "high", "maximum", "top", "summit", "surge", "boom", "spike"],
    "valley": ["valley", "low", "minimum", "dip", "trough", "slump", "drop", "bottom"],
    "ascending": ["ascending", "increase", "growth", "rising", "grow", "gain", "improvement"],
    "descending": ["descending", "decrease", "decline", "falling", "reduction", "shrinking", "loss"],
    "unstable": ["unstable", "volatile", "fluctuation", "erratic", "irregular", "turbulent", "swing"],
    "war": ["war", "battle", "conflict", "military", "army", "soldier", "civil", "fighting"],
    "disease": ["disease", "epidemic", "cholera", "famine", "plague", "outbreak", "hunger"],
    "trade": ["trade", "timber", "export", "railroad", "industry", "mining", "gold", "rubber"],
    "us": ["american", "america", "usa", "union", "confederate"],
    "nordic": ["sweden", "swedish", "norway", "norwegian", "scandinavia"],
    "latin": ["chile", "chilean", "mexico", "mexican", "brazil", "brazilian", "pacific"],
}


def embeddings(rng):
    lines = []
    for words in CLUSTERS.values():
        center = [rng.gauss(0, 1) for _ in range(DIM)]
        for w in words:
            v = [c + rng.gauss(0, 0.45) for c in center]
            lines.append(w + " " + " ".join(f"{x:.5f}" for x in v))
    return "\n".join(lines) + "\n"


GAZETTEER = {
    "united states": {"synonyms": ["united states of america", "american", "america", "usa"],
                      "region": "north america"},
    "sweden": {"synonyms": ["swedish"], "region": "scandinavia"},
    "norway": {"synonyms": ["norwegian"], "region": "scandinavia"},
    "chile": {"synonyms": ["chilean"], "region": "south america"},
    "mexico": {"synonyms": ["mexican"], "region": "north america"},
    "brazil": {"synonyms": ["brazilian"], "region": "south america"},
}

ANTONYMS = """\
# keyword: negative terms
life expectancy: death, mortality
population: death
ascending: descending
descending: ascending
"""


def write_csv(path, years, rows):
    out = ["key," + ",".join(str(y) for y in years)]
    for key, values in rows.items():
        out.append(key + "," + ",".join("" if v is None else f"{v:.2f}" for v in values))
    path.write_text("\n".join(out) + "\n")


def mini_collection(rng):
    years = list(range(1840, 1901))
    keys = ["united states", "sweden", "norway", "chile", "mexico", "brazil"]
    life, pop, child = {}, {}, {}
    for i, k in enumerate(keys):
        base = 36 + 2 * i
        lv, pv, cv = [], [], []
        for y in years:
            t = y - 1840
            noise = rng.gauss(0, 0.25)
            v = base + 0.15 * t + noise
            if k == "united states":
                if 1856 <= y <= 1870:
                    v = base + 0.15 * t
                v -= 10 * math.exp(-(((y - 1863) / 1.5) ** 2))
            if k == "sweden":
                v -= 4 * math.exp(-(((y - 1868) / 1.2) ** 2))
            lv.append(v)
            pv.append((3 + i) * (1 + 0.02 * t) + rng.gauss(0, 0.05))
            cv.append(300 - 1.2 * t - 10 * i + rng.gauss(0, 1.5))
        life[k], pop[k], child[k] = lv, pv, cv
    d = ROOT / "mini"
    d.mkdir(exist_ok=True)
    write_csv(d / "life_expectancy.csv", years, life)
    write_csv(d / "population.csv", years, pop)
    write_csv(d / "child_mortality.csv", years, child)
    (d / "manifest.json").write_text(json.dumps({
        "id": "mini",
        "datasets": {
            "life expectancy": "life_expectancy.csv",
            "population": "population.csv",
            "child mortality": "child_mortality.csv",
        },
    }, indent=2) + "\n")


MINI_CORPUS = [
    ("american-civil-war", "American Civil War",
     "The American Civil War was fought in the United States from 1861 to 1865. Military deaths and "
     "disease among soldiers pushed life expectancy to a deep low, a dip that marks the minimum of the "
     "1860s."),
    ("civil-war-casualties", "Civil war casualties",
     "Casualty counts for the Union and Confederate armies between 1862 and 1864 show a sharp drop in "
     "American longevity. Mortality peaked as life expectancy fell into a trough."),
    ("union-army-health", "Health of the Union army",
     "Camp epidemics in 1863 and the battles of 1864 left the USA with its lowest life expectancy of the "
     "century, a valley in survival that recovered only after 1866."),
    ("us-census-1860", "United States census of 1860",
     "The 1860 census counted the population of the United States at over thirty million inhabitants, "
     "a strong growth since 1850."),
    ("gold-rush", "California gold rush",
     "The gold rush of 1849 drew settlers to America and boosted mining and trade on the pacific coast."),
    ("swedish-famine", "Swedish famine of 1867",
     "The famine of 1867 to 1869 lowered life expectancy in Sweden, a dip in survival followed by "
     "emigration to America."),
    ("norwegian-emigration", "Norwegian emigration",
     "Norway lost many young people to emigration during the 1860s and 1880s as inhabitants sought land "
     "in North America."),
    ("war-of-the-pacific", "War of the Pacific",
     "Chile fought the War of the Pacific from 1879 to 1884; military casualties were modest compared to "
     "the economic boom from nitrate export."),
    ("mexican-reform-war", "Reform War in Mexico",
     "The Reform War between 1857 and 1861 divided Mexico; the conflict and later French intervention "
     "hurt the Mexican economy."),
    ("brazil-rubber", "Brazilian rubber boom",
     "The rubber boom brought wealth and railroad building to Brazil in the 1880s and 1890s."),
    ("cholera-1849", "Cholera of 1849",
     "Cholera outbreaks in 1849 and 1854 raised mortality in many American cities and reduced life "
     "expectancy for a short time."),
    ("reconstruction", "Reconstruction era",
     "After 1865 the Reconstruction era in the United States rebuilt the southern economy and railroads."),
    ("infant-health-19th", "Infant health in the 19th century",
     "Child mortality fell slowly during the 19th century as infant health and sanitation improved across "
     "Scandinavia."),
    ("transcontinental", "Transcontinental railroad",
     "Completed in 1869, the transcontinental railroad linked the American east and west and expanded "
     "trade and industry."),
    ("chilean-earthquake", "Valparaiso earthquake",
     "The earthquake of 1868 in Chile destroyed ports along the pacific coast."),
    ("nordic-timber", "Nordic timber trade",
     "Sweden and Norway exported timber across Europe throughout the 1850s and 1860s."),
    ("mexican-population", "Population of Mexico",
     "The population of Mexico grew during the 1890s as railroads reached northern states."),
    ("brazil-abolition", "Abolition in Brazil",
     "Brazil abolished slavery in 1888, the last country in the Americas to do so."),
    ("us-life-tables", "Early American life tables",
     "Life tables from Massachusetts in the 1850s estimate American life expectancy near forty years."),
    ("yellow-fever", "Yellow fever epidemics",
     "Yellow fever epidemics struck New Orleans in 1853 and Memphis in 1878, with high mortality."),
    ("swedish-industry", "Swedish industrialisation",
     "Industry and railroad growth in Sweden accelerated after 1870, raising wages and health."),
    ("chilean-nitrate", "Chilean nitrate era",
     "Nitrate export after 1884 brought a surge of income to Chile."),
    ("mexico-porfiriato", "Porfiriato",
     "From 1876 Mexico under Porfirio Diaz saw railroad expansion and mining growth."),
    ("norwegian-fisheries", "Norwegian fisheries",
     "Fisheries and shipping made Norway a major maritime nation by the 1870s."),
    ("panic-1857", "Panic of 1857",
     "The financial panic of 1857 caused a sharp economic slump in the United States and Europe."),
]


def stability_fixture(rng):
    years = list(range(1900, 1961))
    keys = ["sweden", "norway", "chile", "brazil"]
    # (centre year, amplitude, spread) bumps per key; negative amplitude is a valley
    bumps = {
        "sweden": [(1915, 12, 1.6), (1932, -10, 1.6)],
        "norway": [(1920, -11, 1.5), (1940, 9, 1.8)],
        "chile": [(1910, 10, 1.4), (1928, -12, 1.6)],
        "brazil": [(1918, 11, 1.5), (1936, -9, 1.7)],
    }
    # twin peaks: an M shape whose halves classify as unstable
    twins = {"sweden": 1947, "norway": 1952, "chile": 1945, "brazil": 1950}
    rows = {}
    for k in keys:
        vals = []
        for y in years:
            v = 50 + rng.gauss(0, 0.15)
            for c, a, s in bumps[k]:
                v += a * math.exp(-(((y - c) / s) ** 2))
            v += {1: 6, 2: 2, 3: 6}.get(y - twins[k], 0)
            vals.append(v)
        rows[k] = vals
    d = ROOT / "stability"
    d.mkdir(exist_ok=True)
    write_csv(d / "income.csv", years, rows)
    (d / "manifest.json").write_text(json.dumps(
        {"id": "stability", "datasets": {"income": "income.csv"}}, indent=2) + "\n")

    peak_words = ["peak", "high", "boom", "surge"]
    valley_words = ["valley", "low", "slump", "dip"]
    docs = []
    for k in keys:
        for c, a, _ in bumps[k]:
            words = peak_words if a > 0 else valley_words
            for j in range(3):
                yrs = [c - 1 + j, c + j - 2, c]
                docs.append({
                    "id": f"{k}-{c}-{j}",
                    "title": f"{k.title()} income around {c}",
                    "body": (f"In {yrs[0]} and {yrs[1]} {k.title()} saw income reach a {words[j]} "
                             f"and wages a {words[(j + 1) % 4]}, most visible in {yrs[2]}, "
                             f"with earnings rising before and falling after."),
                })
        r = twins[k]
        for j in range(3):
            docs.append({
                "id": f"{k}-twin-{j}",
                "title": f"Volatile {k} income",
                "body": (f"Income in {k.title()} was volatile and erratic in {r + j}, with an unstable "
                         f"swing of wages around {r + j + 2}, rising and falling again."),
            })
    for i, y in enumerate(range(1900, 1961, 6)):
        docs.append({
            "id": f"filler-{i}",
            "title": f"Events of {y}",
            "body": f"A summary of trade and politics in {y} with no income figures.",
        })
    (d / "corpus.jsonl").write_text("".join(json.dumps(x) + "\n" for x in docs))


def suggest_fixture(rng):
    years = list(range(2000, 2020))
    anchor = [10 + 4 * math.sin(i / 2.5) + 0.3 * i for i in range(len(years))]
    noisy = [v + rng.gauss(0, 1.2) for v in anchor]
    lagged = [anchor[max(i - 3, 0)] for i in range(len(years))]
    rows = {
        "anchor": anchor,
        "twin": list(anchor),
        "mirror": [30 - v for v in anchor],
        "noisy": noisy,
        "lagged": lagged,
        "flat": [12.0] * len(years),
    }
    d = ROOT / "suggest"
    d.mkdir(exist_ok=True)
    write_csv(d / "signal.csv", years, rows)
    write_csv(d / "echo.csv", years, {"anchor": anchor, "twin": noisy})
    write_csv(d / "inverse.csv", years, {"anchor": [30 - v for v in anchor]})
    write_csv(d / "drift.csv", years, {"anchor": lagged})
    (d / "manifest.json").write_text(json.dumps({
        "id": "suggest",
        "datasets": {"signal": "signal.csv", "echo": "echo.csv", "inverse": "inverse.csv",
                     "drift": "drift.csv"},
    }, indent=2) + "\n")


def main():
    rng = random.Random(20211004)
    (ROOT / "embeddings.txt").write_text(embeddings(rng))
    (ROOT / "gazetteer.json").write_text(json.dumps(GAZETTEER, indent=2) + "\n")
    (ROOT / "antonyms.txt").write_text(ANTONYMS)
    mini_collection(rng)
    (ROOT / "mini" / "corpus.jsonl").write_text("".join(
        json.dumps({"id": i, "title": t, "body": b}) + "\n" for i, t, b in MINI_CORPUS))
    stability_fixture(rng)
    suggest_fixture(rng)


if __name__ == "__main__":
    main()
