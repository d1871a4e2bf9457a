/** UI strings; English is the default, German ships alongside. */

export interface Labels {
  mainTab: string;
  bigramsTab: string;
  patternsLabel: string;
  patternsHint: string;
  modeExact: string;
  modeWithin: string;
  fromLabel: string;
  toLabel: string;
  windowLabel: string;
  calculate: string;
  searchBigrams: string;
  bmodeAnywhere: string;
  bmodeFirst: string;
  bmodeSecond: string;
  hitTableTitle: string;
  hitSearchPlaceholder: string;
  columnForm: string;
  columnPattern: string;
  columnCount: string;
  columnFirst: string;
  columnSecond: string;
  downloadCsv: string;
  downloadSvg: string;
  downloadPng: string;
  previousPage: string;
  nextPage: string;
  pageOf: (page: number, pages: number) => string;
  corpusBanner: (firstDate: string, lastDate: string, tokens: number) => string;
  loading: string;
  retry: string;
  noResults: string;
  emptyDropped: (patterns: string[]) => string;
}

export const EN: Labels = {
  mainTab: "Frequencies",
  bigramsTab: "Bigram finder",
  patternsLabel: "Word forms",
  patternsHint: "separate several patterns with commas; two words make a bigram",
  modeExact: "exact",
  modeWithin: "within a word",
  fromLabel: "From",
  toLabel: "To",
  windowLabel: "Smoothing window (days)",
  calculate: "Calculate",
  searchBigrams: "Find bigrams",
  bmodeAnywhere: "anywhere",
  bmodeFirst: "first word is",
  bmodeSecond: "second word is",
  hitTableTitle: "Matching word forms",
  hitSearchPlaceholder: "filter the table",
  columnForm: "word form",
  columnPattern: "pattern",
  columnCount: "occurrences",
  columnFirst: "first word",
  columnSecond: "second word",
  downloadCsv: "Download CSV",
  downloadSvg: "Chart as SVG",
  downloadPng: "Chart as PNG",
  previousPage: "Previous",
  nextPage: "Next",
  pageOf: (page, pages) => `page ${page} of ${pages}`,
  corpusBanner: (firstDate, lastDate, tokens) =>
    `Corpus covers ${firstDate} to ${lastDate} (${tokens.toLocaleString("en-US")} tokens).`,
  loading: "loading…",
  retry: "Retry",
  noResults: "nothing found",
  emptyDropped: (patterns) => `ignored after sanitization: ${patterns.join(", ")}`,
};

export const DE: Labels = {
  mainTab: "Frequenzen",
  bigramsTab: "Bigramm-Finder",
  patternsLabel: "Wortformen",
  patternsHint: "mehrere Muster mit Komma trennen; zwei Wörter ergeben ein Bigramm",
  modeExact: "exakt",
  modeWithin: "im Wort",
  fromLabel: "Von",
  toLabel: "Bis",
  windowLabel: "Glättungsfenster (Tage)",
  calculate: "Berechnen",
  searchBigrams: "Bigramme finden",
  bmodeAnywhere: "überall",
  bmodeFirst: "erstes Wort ist",
  bmodeSecond: "zweites Wort ist",
  hitTableTitle: "Passende Wortformen",
  hitSearchPlaceholder: "Tabelle filtern",
  columnForm: "Wortform",
  columnPattern: "Muster",
  columnCount: "Vorkommen",
  columnFirst: "erstes Wort",
  columnSecond: "zweites Wort",
  downloadCsv: "CSV herunterladen",
  downloadSvg: "Diagramm als SVG",
  downloadPng: "Diagramm als PNG",
  previousPage: "Zurück",
  nextPage: "Weiter",
  pageOf: (page, pages) => `Seite ${page} von ${pages}`,
  corpusBanner: (firstDate, lastDate, tokens) =>
    `Korpus umfasst ${firstDate} bis ${lastDate} (${tokens.toLocaleString("de-DE")} Tokens).`,
  loading: "lädt…",
  retry: "Erneut versuchen",
  noResults: "nichts gefunden",
  emptyDropped: (patterns) => `nach Bereinigung ignoriert: ${patterns.join(", ")}`,
};

export function getLabels(language: string | undefined): Labels {
  return language && language.toLowerCase().startsWith("de") ? DE : EN;
}
