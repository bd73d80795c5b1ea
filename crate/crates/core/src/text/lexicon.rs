//! Built-in German word lists used by the heuristic annotator and the
//! built-in rules. All entries are lowercase.

pub const DETERMINERS: &[&str] = &[
    "der", "die", "das", "den", "dem", "des", "ein", "eine", "einen", "einem", "einer", "eines",
    "kein", "keine", "keinen", "keinem", "keiner", "keines", "dieser", "diese", "dieses", "diesen",
    "diesem", "jener", "jene", "jenes", "jenen", "jenem", "jeder", "jede", "jedes", "jeden",
    "jedem", "mein", "meine", "meinen", "meinem", "meiner", "meines", "dein", "deine", "deinen",
    "deinem", "deiner", "deines", "sein", "seine", "seinen", "seinem", "seiner", "seines", "ihr",
    "ihre", "ihren", "ihrem", "ihrer", "ihres", "unser", "unsere", "unseren", "unserem", "unserer",
    "unseres", "euer", "eure", "euren", "eurem", "eurer", "eures", "alle", "allen", "aller",
    "alles", "allem", "einige", "einigen", "einiger", "mehrere", "mehreren", "viele", "vielen",
    "vieler", "manche", "manchen", "mancher", "solche", "solchen", "solcher", "welche", "welcher",
    "welches", "welchen", "welchem", "beide", "beiden", "wenige", "wenigen",
];

/// Determiners that are unambiguously genitive.
pub const GENITIVE_DETERMINERS: &[&str] = &[
    "des", "eines", "keines", "meines", "deines", "seines", "ihres", "unseres", "eures", "jedes",
    "dessen", "deren",
];

pub const PRONOUNS: &[&str] = &[
    "ich", "du", "er", "sie", "es", "wir", "ihr", "mich", "dich", "sich", "uns", "euch", "mir",
    "dir", "ihm", "ihn", "ihnen", "man", "jemand", "niemand", "etwas", "nichts", "wer", "was",
    "wem", "wen", "dies", "jemandem", "jemanden", "selbst", "einander",
];

pub const RELATIVE_PRONOUNS: &[&str] = &[
    "der", "die", "das", "dem", "den", "denen", "dessen", "deren", "welcher", "welche", "welches",
    "welchem", "welchen", "wo", "worin", "womit", "wodurch", "wobei", "worauf",
];

pub const ADPOSITIONS: &[&str] = &[
    "in",
    "im",
    "ins",
    "an",
    "am",
    "ans",
    "auf",
    "aufs",
    "aus",
    "bei",
    "beim",
    "mit",
    "nach",
    "von",
    "vom",
    "zu",
    "zum",
    "zur",
    "für",
    "fürs",
    "über",
    "überm",
    "unter",
    "vor",
    "vorm",
    "hinter",
    "neben",
    "zwischen",
    "durch",
    "durchs",
    "gegen",
    "ohne",
    "um",
    "ums",
    "seit",
    "bis",
    "trotz",
    "wegen",
    "während",
    "statt",
    "anstatt",
    "innerhalb",
    "außerhalb",
    "entlang",
    "gegenüber",
    "laut",
    "gemäß",
    "mittels",
    "infolge",
    "aufgrund",
    "oberhalb",
    "unterhalb",
    "jenseits",
    "diesseits",
    "ab",
    "per",
    "pro",
    "samt",
    "binnen",
];

pub const COORDINATING_CONJUNCTIONS: &[&str] = &[
    "und", "oder", "aber", "sondern", "denn", "sowie", "doch", "jedoch",
];

pub const SUBORDINATING_CONJUNCTIONS: &[&str] = &[
    "dass",
    "daß",
    "weil",
    "wenn",
    "ob",
    "obwohl",
    "obgleich",
    "als",
    "da",
    "damit",
    "nachdem",
    "bevor",
    "ehe",
    "seitdem",
    "sodass",
    "sofern",
    "soweit",
    "solange",
    "sobald",
    "falls",
    "indem",
    "wobei",
    "wie",
    "wohingegen",
    "während",
    "bis",
    "seit",
    "weshalb",
    "weswegen",
    "warum",
    "wieso",
    "wodurch",
];

pub const PARTICLES: &[&str] = &["nicht", "zu", "ja", "nein", "doch", "bitte"];

pub const ADVERBS: &[&str] = &[
    "auch",
    "sehr",
    "noch",
    "schon",
    "nur",
    "hier",
    "dort",
    "da",
    "dann",
    "so",
    "immer",
    "nie",
    "niemals",
    "oft",
    "häufig",
    "heute",
    "gestern",
    "morgen",
    "jetzt",
    "bereits",
    "erst",
    "meist",
    "meistens",
    "zuletzt",
    "zuerst",
    "später",
    "früher",
    "fast",
    "sonst",
    "etwa",
    "ebenfalls",
    "außerdem",
    "bisher",
    "danach",
    "davor",
    "dabei",
    "damals",
    "deshalb",
    "darum",
    "daher",
    "trotzdem",
    "dennoch",
    "allerdings",
    "insbesondere",
    "vor allem",
    "gern",
    "gerne",
    "wieder",
    "weiter",
    "mehr",
    "weniger",
    "ganz",
    "gar",
    "kaum",
    "mal",
    "einmal",
    "zusammen",
    "heute",
    "heutzutage",
    "inzwischen",
    "mittlerweile",
    "zudem",
    "ebenso",
    "überall",
    "nirgends",
    "irgendwo",
    "vielleicht",
    "wahrscheinlich",
    "sicher",
    "natürlich",
    "eigentlich",
    "beispielsweise",
    "ungefähr",
    "rund",
    "knapp",
    "teilweise",
    "vollständig",
    "jeweils",
    "stets",
    "bald",
    "lange",
    "längst",
    "endlich",
    "schließlich",
    "zunächst",
    "anschließend",
    "somit",
    "also",
    "sogar",
    "bloß",
    "eben",
    "genau",
    "vorher",
    "nachher",
    "darauf",
    "daraus",
    "darin",
    "damit",
    "davon",
    "dazu",
    "dafür",
    "dagegen",
    "darüber",
    "darunter",
    "hierbei",
    "hierzu",
    "wo",
    "wann",
    "wie",
    "weit",
    "weitgehend",
    "links",
    "rechts",
    "oben",
    "unten",
    "vorne",
    "hinten",
    "innen",
    "außen",
    "nun",
    "gleich",
    "ebenda",
    "ehemals",
    "erstmals",
    "zweimal",
    "dreimal",
    "jährlich",
    "täglich",
    "wöchentlich",
    "ursprünglich",
    "hauptsächlich",
    "besonders",
    "ziemlich",
    "relativ",
    "etwas",
    "viel",
    "wenig",
    "nicht",
    "selten",
    "manchmal",
    "gelegentlich",
    "zeitweise",
];

/// Lowercase adjectives that would otherwise look like finite verbs
/// (ending in `-t`, `-st`, `-en`, `-e`).
pub const ADJECTIVES: &[&str] = &[
    "alt",
    "neu",
    "rot",
    "blau",
    "grün",
    "gelb",
    "weiß",
    "schwarz",
    "grau",
    "braun",
    "groß",
    "klein",
    "gut",
    "schlecht",
    "lang",
    "kurz",
    "hoch",
    "tief",
    "breit",
    "weit",
    "leicht",
    "schwer",
    "recht",
    "echt",
    "hart",
    "laut",
    "leise",
    "bunt",
    "sanft",
    "zart",
    "bekannt",
    "berühmt",
    "wichtig",
    "schön",
    "stark",
    "schwach",
    "warm",
    "kalt",
    "heiß",
    "jung",
    "früh",
    "spät",
    "nah",
    "fern",
    "reich",
    "arm",
    "voll",
    "leer",
    "dicht",
    "heute",
    "erste",
    "ersten",
    "erster",
    "erstes",
    "zweite",
    "zweiten",
    "dritte",
    "dritten",
    "letzte",
    "letzten",
    "letzter",
    "nächste",
    "nächsten",
    "meiste",
    "meisten",
    "beste",
    "besten",
    "größte",
    "größten",
    "weitere",
    "weiteren",
    "andere",
    "anderen",
    "anderer",
    "anderes",
    "gesamt",
    "gesamte",
    "gesamten",
    "fest",
    "bereit",
    "wert",
    "zuständig",
    "verwandt",
    "benannt",
    "bedeutend",
    "gelegen",
    "entfernt",
    "verheiratet",
    "geboren",
    "gestorben",
    "selbstständig",
    "unabhängig",
    "direkt",
    "indirekt",
    "exakt",
    "kompakt",
    "korrekt",
    "perfekt",
    "intakt",
    "abstrakt",
    "konkret",
    "privat",
    "modern",
    "extrem",
    "gerade",
    "leise",
    "müde",
    "böse",
    "weise",
    "rote",
    "roten",
    "blaue",
    "blauen",
    "grüne",
    "grünen",
    "weiße",
    "weißen",
    "schwarze",
    "schwarzen",
    "gelbe",
    "gelben",
    "große",
    "großen",
    "kleine",
    "kleinen",
    "gute",
    "guten",
    "neue",
    "neuen",
    "alte",
    "alten",
    "lange",
    "langen",
    "hohe",
    "hohen",
    "deutsche",
    "deutschen",
    "eigene",
    "eigenen",
    "verschiedene",
    "verschiedenen",
    "einzelne",
    "einzelnen",
    "bestimmte",
    "bestimmten",
    "wenige",
    "mehrere",
    "zahlreiche",
    "zahlreichen",
    "bekannte",
    "bekannten",
    "bedeutende",
    "bedeutenden",
    "öffentliche",
    "öffentlichen",
    "heutige",
    "heutigen",
    "damalige",
    "damaligen",
    "frühere",
    "früheren",
    "spätere",
    "späteren",
    "ehemalige",
    "ehemaligen",
    "gemeinsame",
    "gemeinsamen",
];

/// Adjective derivation suffixes (before inflection).
pub const ADJECTIVE_SUFFIXES: &[&str] = &[
    "ig", "lich", "isch", "bar", "sam", "los", "haft", "voll", "reich", "arm", "mäßig", "artig",
    "ell", "al", "iv", "ös", "ant", "ent",
];

pub const ADJECTIVE_INFLECTIONS: &[&str] = &[
    "", "e", "en", "er", "es", "em", "ere", "eren", "ste", "sten",
];

/// Finite forms of `sein`, `haben`, `werden` and the modal verbs.
pub const AUXILIARIES: &[&str] = &[
    "bin",
    "bist",
    "ist",
    "sind",
    "seid",
    "war",
    "warst",
    "waren",
    "wart",
    "sei",
    "seist",
    "seien",
    "wäre",
    "wärst",
    "wären",
    "wäret",
    "habe",
    "hast",
    "hat",
    "haben",
    "habt",
    "hatte",
    "hattest",
    "hatten",
    "hattet",
    "hätte",
    "hättest",
    "hätten",
    "hättet",
    "werde",
    "wirst",
    "wird",
    "werden",
    "werdet",
    "wurde",
    "wurdest",
    "wurden",
    "wurdet",
    "würde",
    "würdest",
    "würden",
    "würdet",
    "kann",
    "kannst",
    "können",
    "könnt",
    "konnte",
    "konnten",
    "könnte",
    "könnten",
    "muss",
    "musst",
    "müssen",
    "müsst",
    "musste",
    "mussten",
    "müsste",
    "müssten",
    "soll",
    "sollst",
    "sollen",
    "sollt",
    "sollte",
    "sollten",
    "will",
    "willst",
    "wollen",
    "wollt",
    "wollte",
    "wollten",
    "darf",
    "darfst",
    "dürfen",
    "dürft",
    "durfte",
    "durften",
    "dürfte",
    "dürften",
    "mag",
    "magst",
    "mögen",
    "mögt",
    "mochte",
    "mochten",
    "möchte",
    "möchten",
    "möchtest",
];

/// Forms of `werden`, which together with a participle form the passive.
pub const WERDEN_FORMS: &[&str] = &[
    "werde", "wirst", "wird", "werden", "werdet", "wurde", "wurdest", "wurden", "wurdet", "würde",
    "würdest", "würden", "würdet", "worden",
];

/// Subjunctive (Konjunktiv I/II) forms.
pub const SUBJUNCTIVE_FORMS: &[&str] = &[
    "sei", "seist", "seien", "seiet", "wäre", "wärst", "wären", "wäret", "hätte", "hättest",
    "hätten", "hättet", "würde", "würdest", "würden", "würdet", "könnte", "könnten", "müsste",
    "müssten", "dürfte", "dürften", "möge", "mögest", "gäbe", "gäben", "käme", "kämen", "ginge",
    "gingen", "stünde", "stünden", "bliebe", "blieben", "wüsste", "wüssten", "täte", "täten",
    "läge", "lägen", "sähe", "sähen",
];

/// Irregular finite forms not caught by the suffix heuristic.
pub const IRREGULAR_FINITE: &[&str] = &[
    "weiß",
    "lag",
    "kam",
    "gab",
    "sah",
    "ging",
    "fand",
    "nahm",
    "stand",
    "blieb",
    "fiel",
    "lief",
    "rief",
    "schrieb",
    "trat",
    "wuchs",
    "zog",
    "bot",
    "fuhr",
    "trug",
    "begann",
    "gewann",
    "verlor",
    "entstand",
    "starb",
    "bekam",
    "sprach",
    "traf",
    "brach",
    "warf",
    "half",
    "las",
    "aß",
    "saß",
    "schuf",
    "floss",
    "schloss",
    "hieß",
    "ließ",
    "fing",
    "hing",
    "verließ",
    "erschien",
    "schien",
    "stieg",
    "wies",
    "bewies",
    "bestand",
    "verstand",
    "gelang",
    "sang",
    "sank",
    "trank",
    "zwang",
    "band",
    "verschwand",
    "erhielt",
    "hielt",
    "galt",
    "gilt",
    "gibt",
    "nimmt",
    "sieht",
    "liest",
    "spricht",
    "trifft",
    "hilft",
    "wirft",
    "stirbt",
    "fällt",
    "läuft",
    "fährt",
    "trägt",
    "wächst",
    "schläft",
    "hält",
    "lässt",
    "tut",
    "tat",
    "taten",
    "geht",
    "steht",
    "liegt",
    "heißt",
    "kommt",
];

pub const NEGATIONS: &[&str] = &[
    "nicht",
    "kein",
    "keine",
    "keinen",
    "keinem",
    "keiner",
    "keines",
    "nie",
    "niemals",
    "nichts",
    "niemand",
    "niemandem",
    "niemanden",
    "nirgends",
    "nirgendwo",
    "weder",
    "keinesfalls",
    "keineswegs",
];

/// Common abbreviations whose trailing period does not end a sentence.
pub const ABBREVIATIONS: &[&str] = &[
    "z", "b", "d", "h", "u", "a", "o", "bzw", "usw", "ca", "etc", "vgl", "nr", "dr", "prof", "st",
    "jh", "mio", "mrd", "bspw", "ggf", "inkl", "evtl", "sog", "geb", "gest", "bzgl", "ebd", "hl",
    "mr", "mrs", "ff", "abs", "art", "max", "min", "engl", "lat", "franz", "griech", "ital",
    "span", "ehem", "urspr", "v", "chr",
];

pub const MONTHS: &[&str] = &[
    "januar",
    "februar",
    "märz",
    "april",
    "mai",
    "juni",
    "juli",
    "august",
    "september",
    "oktober",
    "november",
    "dezember",
    "jänner",
];

/// Suffixes of abstract nouns.
pub const ABSTRACT_SUFFIXES: &[&str] = &[
    "ung", "ungen", "heit", "heiten", "keit", "keiten", "schaft", "schaften", "ismus", "ismen",
    "tion", "tionen", "ität", "itäten", "nis", "nisse", "tum", "ie", "ien", "anz", "enz",
];

/// Small gazetteer of proper names for the built-in entity recognizer.
pub const GAZETTEER: &[(&str, &str)] = &[
    ("Deutschland", "LOC"),
    ("Österreich", "LOC"),
    ("Schweiz", "LOC"),
    ("Frankreich", "LOC"),
    ("Italien", "LOC"),
    ("Spanien", "LOC"),
    ("England", "LOC"),
    ("Europa", "LOC"),
    ("Amerika", "LOC"),
    ("Afrika", "LOC"),
    ("Asien", "LOC"),
    ("China", "LOC"),
    ("Russland", "LOC"),
    ("Polen", "LOC"),
    ("Niederlande", "LOC"),
    ("Belgien", "LOC"),
    ("Berlin", "LOC"),
    ("Hamburg", "LOC"),
    ("München", "LOC"),
    ("Köln", "LOC"),
    ("Frankfurt", "LOC"),
    ("Stuttgart", "LOC"),
    ("Düsseldorf", "LOC"),
    ("Aachen", "LOC"),
    ("Bonn", "LOC"),
    ("Dresden", "LOC"),
    ("Leipzig", "LOC"),
    ("Hannover", "LOC"),
    ("Bremen", "LOC"),
    ("Nürnberg", "LOC"),
    ("Wien", "LOC"),
    ("Zürich", "LOC"),
    ("Paris", "LOC"),
    ("London", "LOC"),
    ("Rom", "LOC"),
    ("Prag", "LOC"),
    ("Lüttich", "LOC"),
    ("Maastricht", "LOC"),
    ("Rhein", "LOC"),
    ("Donau", "LOC"),
    ("Elbe", "LOC"),
    ("Main", "LOC"),
    ("Mosel", "LOC"),
    ("Weser", "LOC"),
    ("Alpen", "LOC"),
    ("Eifel", "LOC"),
    ("Nordsee", "LOC"),
    ("Ostsee", "LOC"),
    ("Bayern", "LOC"),
    ("Sachsen", "LOC"),
    ("Hessen", "LOC"),
    ("Nordrhein-Westfalen", "LOC"),
    ("Rheinland", "LOC"),
    ("Westfalen", "LOC"),
    ("Karl", "PER"),
    ("Goethe", "PER"),
    ("Schiller", "PER"),
    ("Luther", "PER"),
    ("Beethoven", "PER"),
    ("Bach", "PER"),
    ("Mozart", "PER"),
    ("Einstein", "PER"),
    ("Bismarck", "PER"),
    ("Napoleon", "PER"),
    ("Charlemagne", "PER"),
    ("Karl der Große", "PER"),
    ("Römer", "MISC"),
    ("Kelten", "MISC"),
    ("Franken", "MISC"),
    ("Europäische Union", "ORG"),
    ("Bundestag", "ORG"),
    ("UNESCO", "ORG"),
    ("RWTH", "ORG"),
    ("Vereinte Nationen", "ORG"),
    ("Bundesliga", "ORG"),
    ("Wikipedia", "MISC"),
];

/// Frequent lowercase words used as the base dictionary of the typo rule,
/// in addition to every closed-class list above.
pub const COMMON_WORDS: &[&str] = &[
    "machen",
    "macht",
    "machte",
    "gehen",
    "geht",
    "ging",
    "kommen",
    "kommt",
    "kam",
    "sagen",
    "sagt",
    "sagte",
    "geben",
    "gibt",
    "gab",
    "stehen",
    "steht",
    "stand",
    "liegen",
    "liegt",
    "lag",
    "finden",
    "findet",
    "fand",
    "bleiben",
    "bleibt",
    "blieb",
    "heißen",
    "heißt",
    "hieß",
    "leben",
    "lebt",
    "lebte",
    "lebten",
    "spielen",
    "spielt",
    "spielte",
    "arbeiten",
    "arbeitet",
    "arbeitete",
    "wohnen",
    "wohnt",
    "wohnte",
    "bauen",
    "baut",
    "baute",
    "gebaut",
    "gründen",
    "gründete",
    "gegründet",
    "entstehen",
    "entsteht",
    "entstand",
    "entstanden",
    "gehören",
    "gehört",
    "gehörte",
    "zählen",
    "zählt",
    "zählte",
    "nennen",
    "nennt",
    "nannte",
    "genannt",
    "bezeichnen",
    "bezeichnet",
    "bezeichnete",
    "beschreiben",
    "beschreibt",
    "beschrieb",
    "beschrieben",
    "fließen",
    "fließt",
    "floss",
    "fließen",
    "regnen",
    "regnet",
    "scheinen",
    "scheint",
    "wachsen",
    "wächst",
    "wuchs",
    "gewachsen",
    "erhalten",
    "erhält",
    "erhielt",
    "führen",
    "führt",
    "führte",
    "geführt",
    "nutzen",
    "nutzt",
    "nutzte",
    "genutzt",
    "verwenden",
    "verwendet",
    "verwendete",
    "erreichen",
    "erreicht",
    "erreichte",
    "bilden",
    "bildet",
    "bildete",
    "gebildet",
    "liefern",
    "liefert",
    "lieferte",
    "helfen",
    "hilft",
    "half",
    "geholfen",
    "sprechen",
    "spricht",
    "sprach",
    "gesprochen",
    "lesen",
    "liest",
    "las",
    "gelesen",
    "schreiben",
    "schreibt",
    "schrieb",
    "geschrieben",
    "sehen",
    "sieht",
    "sah",
    "gesehen",
    "essen",
    "isst",
    "aß",
    "gegessen",
    "trinken",
    "trinkt",
    "trank",
    "getrunken",
    "werfen",
    "wirft",
    "warf",
    "geworfen",
    "bellen",
    "bellt",
    "bellte",
    "laufen",
    "läuft",
    "lief",
    "gelaufen",
    "fahren",
    "fährt",
    "fuhr",
    "gefahren",
    "fallen",
    "fällt",
    "fiel",
    "gefallen",
    "halten",
    "hält",
    "hielt",
    "gehalten",
    "kaufen",
    "kauft",
    "kaufte",
    "gekauft",
    "verkaufen",
    "verkauft",
    "verkaufte",
    "zeigen",
    "zeigt",
    "zeigte",
    "gezeigt",
    "ernten",
    "erntet",
    "erntete",
    "geerntet",
    "steigen",
    "steigt",
    "stieg",
    "gestiegen",
    "sinken",
    "sinkt",
    "sank",
    "gesunken",
    "erwarten",
    "erwartet",
    "erwartete",
    "vorhersagen",
    "glauben",
    "glaubt",
    "glaubte",
    "geglaubt",
    "denken",
    "denkt",
    "dachte",
    "gedacht",
    "wissen",
    "weiß",
    "wusste",
    "gewusst",
    "teuer",
    "teurer",
    "billig",
    "wetter",
    "ernte",
    "stadt",
    "städte",
    "land",
    "länder",
    "fluss",
    "flüsse",
    "jahr",
    "jahre",
    "jahren",
    "jahrhundert",
    "jahrhunderts",
    "zeit",
    "zeiten",
    "mensch",
    "menschen",
    "leute",
    "kind",
    "kinder",
    "frau",
    "frauen",
    "mann",
    "männer",
    "haus",
    "häuser",
    "hund",
    "hunde",
    "katze",
    "ball",
    "welt",
    "teil",
    "teile",
    "teilen",
    "ende",
    "anfang",
    "name",
    "namen",
    "geschichte",
    "kirche",
    "dom",
    "kaiser",
    "könig",
    "königin",
    "krieg",
    "kriege",
    "regierung",
    "gemeinde",
    "gemeinden",
    "einwohner",
    "einwohnern",
    "bevölkerung",
    "region",
    "gebiet",
    "gebiete",
    "wasser",
    "berg",
    "berge",
    "wald",
    "wälder",
    "straße",
    "straßen",
    "schule",
    "schulen",
    "universität",
    "hochschule",
    "wissenschaft",
    "wirtschaft",
    "industrie",
    "preise",
    "preis",
    "inflation",
    "experten",
    "institut",
    "institute",
    "bauern",
    "landwirtschaft",
    "sprache",
    "sprachen",
    "wort",
    "wörter",
    "satz",
    "sätze",
    "text",
    "texte",
    "buch",
    "bücher",
    "bild",
    "bilder",
    "musik",
    "kunst",
    "kultur",
    "sport",
    "verein",
    "vereine",
    "mannschaft",
    "spiel",
    "spiele",
    "tag",
    "tage",
    "woche",
    "monat",
    "monate",
    "stunde",
    "stunden",
    "minute",
    "bahnhof",
    "zug",
    "züge",
    "auto",
    "autos",
    "flughafen",
    "hafen",
    "brücke",
    "brücken",
    "rathaus",
    "markt",
    "platz",
    "zentrum",
    "mitte",
    "norden",
    "süden",
    "osten",
    "westen",
    "grenze",
    "quelle",
    "thermalquellen",
    "bäder",
    "bad",
    "kurort",
    "tier",
    "tiere",
    "pflanze",
    "pflanzen",
    "art",
    "arten",
    "familie",
    "gattung",
    "größe",
    "länge",
    "höhe",
    "fläche",
    "meter",
    "kilometer",
    "prozent",
    "euro",
    "millionen",
    "million",
    "tausend",
    "hundert",
    "gewicht",
    "farbe",
    "form",
    "bedeutung",
    "entwicklung",
    "forschung",
    "regel",
    "regeln",
    "beispiel",
    "fall",
    "grund",
    "gründe",
    "folge",
    "folgen",
    "ziel",
    "ziele",
    "weg",
    "wege",
    "einfach",
    "einfache",
    "einfachen",
    "schwierig",
    "klar",
    "verständlich",
    "heutige",
    "ehemalige",
    "wichtige",
    "wichtigen",
    "stark",
    "schnell",
    "langsam",
    "viel",
    "viele",
    "vielen",
    "weniger",
    "mehr",
    "immer",
    "wieder",
    "ein",
    "zwei",
    "drei",
    "vier",
    "fünf",
    "sechs",
    "sieben",
    "acht",
    "neun",
    "zehn",
    "elf",
    "zwölf",
    "zwanzig",
    "hundert",
    "ungewöhnlich",
    "ungewöhnliche",
    "außergewöhnlich",
    "außergewöhnlichen",
    "bekannte",
    "bekannten",
    "wirtschaftliche",
    "wirtschaftlichen",
    "landwirtschaftlichen",
    "deutlich",
    "deutliche",
    "deutlichen",
    "anstieg",
    "ausfall",
    "ausfälle",
    "produktionsausfälle",
    "wetterbedingungen",
    "bedingungen",
    "folge",
    "daraus",
    "resultierenden",
    "renommierte",
    "wirtschaftsinstitute",
    "prognostizieren",
    "erntete",
    "ernteten",
    "schlecht",
    "schlechtes",
    "gut",
    "gutes",
    "besser",
    "beste",
];
