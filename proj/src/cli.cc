// Copyright 2026 The Quizmorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quizmorph/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "quizmorph/annotation.h"
#include "quizmorph/ingest.h"
#include "quizmorph/jsonl.h"
#include "quizmorph/metrics.h"
#include "quizmorph/pairing.h"
#include "quizmorph/quality.h"
#include "quizmorph/sidecar.h"
#include "quizmorph/stats.h"
#include "quizmorph/text_util.h"
#include "quizmorph/transform.h"

namespace quizmorph {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kLexicalRules = "tfidf:alnum-lower:idf=ln((1+N)/(1+df))+1";
constexpr std::string_view kHeuristicRules = "rubric:wh4,nopron2,len2,end1,verb1";

void require_file(const fs::path &path, std::string_view what) {
  if (path.empty()) throw Error(std::string(what) + " path is required");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw Error("cannot read " + std::string(what) + " file " + path.string());
}

std::string file_digest(const fs::path &path) {
  return hex64(fnv1a64(read_file(path)));
}

std::string digest(const OrderedJson &settings) {
  return hex64(fnv1a64(settings.dump()));
}

std::string double_text(double v) { return OrderedJson(v).dump(); }

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

void write_jsonl(const fs::path &path, const std::string &meta,
                 const std::vector<OrderedJson> &records) {
  std::string body = meta + "\n";
  for (const OrderedJson &r : records) {
    body += r.dump(-1, ' ', false, OrderedJson::error_handler_t::replace);
    body += '\n';
  }
  write_file_atomic(path, body);
}

void write_json(const fs::path &path, const OrderedJson &value) {
  write_file_atomic(path, value.dump(2) + "\n");
}

OrderedJson meta_object(std::string_view kind, const std::string &config_hash,
                        const std::string &rules_hash) {
  OrderedJson m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["kind"] = kind;
  m["config_hash"] = config_hash;
  m["rules_hash"] = rules_hash;
  return m;
}

std::string text_header(std::string_view kind, const std::string &config_hash,
                        const std::string &rules_hash) {
  return "# " + std::string(kToolName) + " " + std::string(kToolVersion) +
         " " + std::string(kind) + " config=" + config_hash +
         " rules=" + rules_hash + "\n";
}

Dataset load_checked(const fs::path &path, Source source, Diagnostics &diags) {
  require_file(path, source == Source::TriviaQB ? "qb" : "nq");
  Dataset d = load_dataset(path, source);
  diags.append(d.diagnostics);
  return d;
}

WhVocabulary vocabulary(const RunConfig &config) {
  if (config.vocab.empty()) return WhVocabulary::builtin();
  require_file(config.vocab, "vocab");
  return WhVocabulary::load(config.vocab);
}

std::string endpoint_of(const RunConfig &config) {
  if (config.sidecar_endpoint.empty())
    throw Error("sidecar selected but no endpoint given (--sidecar-endpoint "
                "or QUIZMORPH_SIDECAR)");
  return config.sidecar_endpoint;
}

SidecarOptions sidecar_options(const RunConfig &config) {
  SidecarOptions o;
  o.endpoint = endpoint_of(config);
  o.timeout = std::chrono::milliseconds(config.sidecar_timeout_ms);
  o.batch_size = config.batch_size;
  return o;
}

OrderedJson generated_to_json(const GeneratedQuestion &g) {
  OrderedJson j;
  j["id"] = g.id;
  j["source_id"] = g.source_id;
  j["sentence_index"] = g.sentence_index;
  j["split_index"] = g.split_index;
  j["is_last_sentence"] = g.is_last_sentence;
  j["question"] = g.text;
  j["answer"] = g.answer;
  j["split"] = to_string(g.split);
  return j;
}

std::vector<GeneratedQuestion> read_generated(const fs::path &path,
                                              Diagnostics &diags) {
  require_file(path, "input");
  std::vector<GeneratedQuestion> out;
  std::set<std::string> seen;
  for (const JsonLine &line : read_jsonl(path, diags)) {
    const Json &v = line.value;
    auto str = [&](const char *key) -> std::string {
      auto it = v.find(key);
      return it != v.end() && it->is_string() ? it->get<std::string>() : "";
    };
    GeneratedQuestion g;
    g.id = str("id");
    g.text = str("question");
    if (g.id.empty() || trim(g.text).empty()) {
      diags.warn(path.string(), line.line, "missing or empty `id`/`question`");
      continue;
    }
    if (!seen.insert(g.id).second)
      throw Error(path.string() + ":" + std::to_string(line.line) +
                  ": duplicate id " + g.id);
    g.source_id = str("source_id");
    g.answer = str("answer");
    g.sentence_index = v.value("sentence_index", 0);
    g.split_index = v.value("split_index", 0);
    g.is_last_sentence = v.value("is_last_sentence", false);
    g.split = parse_split(str("split")).value_or(Split::Unsplit);
    out.push_back(std::move(g));
  }
  return out;
}

void check_threshold(double t, double lo, double hi, std::string_view what) {
  if (!(t >= lo && t <= hi))
    throw Error(std::string(what) + " threshold " + double_text(t) +
                " outside [" + double_text(lo) + ", " + double_text(hi) + "]");
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig load_config(const fs::path &path) {
  require_file(path, "config");
  Json j = Json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("config " + path.string() + " is not a JSON object");
  const fs::path base = path.parent_path();
  auto resolve = [&](const Json &v, const std::string &key) {
    if (!v.is_string()) throw Error("config key `" + key + "` must be a string");
    fs::path p = v.get<std::string>();
    return p.is_relative() && !p.empty() ? base / p : p;
  };

  RunConfig c;
  for (const auto &[key, v] : j.items()) {
    try {
      if (key == "qb") c.qb = resolve(v, key);
      else if (key == "nq") c.nq = resolve(v, key);
      else if (key == "annotations") c.annotations = resolve(v, key);
      else if (key == "vocab") c.vocab = resolve(v, key);
      else if (key == "input") c.input = resolve(v, key);
      else if (key == "predictions") c.predictions = resolve(v, key);
      else if (key == "references") c.references = resolve(v, key);
      else if (key == "out") c.out = resolve(v, key);
      else if (key == "inputs") {
        if (!v.is_array()) throw Error("config key `inputs` must be a list");
        for (const Json &p : v) c.inputs.push_back(resolve(p, key));
      }
      else if (key == "provider") c.provider = v.get<std::string>();
      else if (key == "scorer") c.scorer = v.get<std::string>();
      else if (key == "sidecar_endpoint") c.sidecar_endpoint = v.get<std::string>();
      else if (key == "sidecar_timeout_ms") c.sidecar_timeout_ms = v.get<long>();
      else if (key == "pair_threshold") c.pair_threshold = v.get<double>();
      else if (key == "quality_threshold") c.quality_threshold = v.get<double>();
      else if (key == "last_sentence_only") c.last_sentence_only = v.get<bool>();
      else if (key == "batch_size") c.batch_size = v.get<std::size_t>();
      else if (key == "min_words") c.min_words = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<long>();
      else throw Error("unknown config key `" + key + "`");
    } catch (const Json::exception &e) {
      throw Error("config key `" + key + "` has the wrong type");
    }
  }
  return c;
}

void cmd_pair(const RunConfig &config, Diagnostics &diags) {
  check_threshold(config.pair_threshold, -1.0, 1.0, "pairing");
  Dataset qb = load_checked(config.qb, Source::TriviaQB, diags);
  Dataset nq = load_checked(config.nq, Source::NaturalNQ, diags);

  std::unique_ptr<SidecarClient> client;
  std::unique_ptr<SimilarityProvider> provider;
  std::string rules;
  if (config.provider == "lexical") {
    provider = std::make_unique<LexicalProvider>();
    rules = hex64(fnv1a64(kLexicalRules));
  } else if (config.provider == "sidecar") {
    client = std::make_unique<SidecarClient>(sidecar_options(config));
    provider = std::make_unique<SidecarSimilarityProvider>(*client);
    rules = hex64(fnv1a64("sidecar-embed"));
  } else {
    throw Error("unknown provider `" + config.provider + "`");
  }

  OrderedJson settings;
  settings["command"] = "pair";
  settings["qb"] = file_digest(config.qb);
  settings["nq"] = file_digest(config.nq);
  settings["provider"] = config.provider;
  settings["threshold"] = config.pair_threshold;
  settings["batch_size"] = config.batch_size;
  const std::string hash = digest(settings);

  std::vector<CandidatePair> candidates =
      pair_by_answer(qb.records, nq.records, &diags);
  std::vector<QuestionPair> scored = score_pairs(
      candidates, qb.records, nq.records, *provider, config.batch_size, &diags);
  std::vector<QuestionPair> kept = apply_threshold(scored, config.pair_threshold);

  std::vector<OrderedJson> rows;
  for (const QuestionPair &p : kept) {
    OrderedJson r;
    r["qb_id"] = p.qb_id;
    r["nq_id"] = p.nq_id;
    r["answer"] = p.normalized_answer;
    r["similarity"] = p.similarity;
    r["provider"] = to_string(p.provider);
    rows.push_back(std::move(r));
  }
  write_jsonl(config.out / "pairs.jsonl", meta_line("pairs", hash, rules), rows);

  OrderedJson summary;
  summary["meta"] = meta_object("pair_summary", hash, rules);
  summary["qb_records"] = qb.records.size();
  summary["nq_records"] = nq.records.size();
  summary["candidates"] = candidates.size();
  summary["scored"] = scored.size();
  summary["retained"] = kept.size();
  summary["threshold"] = config.pair_threshold;
  summary["provider"] = config.provider;
  write_json(config.out / "pair_summary.json", summary);
}

void cmd_generate(const RunConfig &config, Diagnostics &diags) {
  Dataset qb = load_checked(config.qb, Source::TriviaQB, diags);
  const WhVocabulary vocab = vocabulary(config);

  AnnotationSet annotations;
  if (!config.annotations.empty()) {
    require_file(config.annotations, "annotations");
    annotations = parse_annotations(config.annotations);
    diags.append(annotations.diagnostics);
  }

  OrderedJson settings;
  settings["command"] = "generate";
  settings["qb"] = file_digest(config.qb);
  settings["annotations"] =
      config.annotations.empty() ? "heuristic" : file_digest(config.annotations);
  settings["last_sentence_only"] = config.last_sentence_only;
  settings["min_words"] = config.min_words;
  const std::string hash = digest(settings);
  const std::string rules = rules_fingerprint(vocab);

  GenerationOptions options;
  options.last_sentence_only = config.last_sentence_only;
  options.min_words = config.min_words;

  std::vector<GeneratedQuestion> generated;
  std::vector<std::string> source_texts;
  for (const RawQuestion &q : qb.records) {
    AnnotatedQuestion heuristic;
    const AnnotatedQuestion *ann = nullptr;
    if (config.annotations.empty()) {
      heuristic = heuristic_annotate_question(q.text);
      ann = &heuristic;
    } else if (auto it = annotations.questions.find(q.id);
               it != annotations.questions.end()) {
      ann = &it->second;
    } else {
      diags.warn(config.annotations.string(), 0,
                 "no annotation for question " + q.id + "; skipped");
      continue;
    }
    source_texts.push_back(q.text);
    for (GeneratedQuestion &g : generate_nq_like(q, ann->sentences, ann->clusters,
                                                 vocab, options, &diags))
      generated.push_back(std::move(g));
  }

  std::vector<OrderedJson> rows;
  std::vector<std::string> generated_texts;
  for (const GeneratedQuestion &g : generated) {
    rows.push_back(generated_to_json(g));
    generated_texts.push_back(g.text);
  }
  write_jsonl(config.out / "generated.jsonl", meta_line("generated", hash, rules),
              rows);

  std::vector<StatsRow> table;
  OrderedJson stats;
  stats["meta"] = meta_object("generate_stats", hash, rules);
  auto add_row = [&](const std::string &label,
                     const std::vector<std::string> &texts) {
    if (texts.empty()) return;
    StatsRow row{label, sentence_count_stats(texts)};
    OrderedJson j;
    j["label"] = label;
    j["data_size"] = row.summary.sample_count;
    j["mean"] = row.summary.mean;
    j["median"] = row.summary.median;
    j["mode"] = row.summary.mode;
    stats["rows"].push_back(std::move(j));
    table.push_back(std::move(row));
  };
  stats["rows"] = OrderedJson::array();
  add_row("quizbowl", source_texts);
  add_row("generated", generated_texts);
  SplitCounts split = split_summary(std::span<const GeneratedQuestion>(generated));
  stats["splits"] = {{"train", split.train},
                     {"dev", split.dev},
                     {"test", split.test},
                     {"unsplit", split.unsplit},
                     {"total", split.total()}};
  write_json(config.out / "generate_stats.json", stats);
  write_file_atomic(config.out / "generate_stats.txt",
                    text_header("generate_stats", hash, rules) +
                        format_stats_table(table) + "\n" +
                        format_split_table(split));
}

void cmd_filter(const RunConfig &config, Diagnostics &diags) {
  check_threshold(config.quality_threshold, 0.0, 1.0, "quality");
  std::vector<GeneratedQuestion> questions = read_generated(config.input, diags);

  std::unique_ptr<SidecarClient> client;
  std::unique_ptr<QualityScorer> scorer;
  std::string rules;
  if (config.scorer == "heuristic") {
    scorer = std::make_unique<HeuristicScorer>();
    rules = hex64(fnv1a64(kHeuristicRules));
  } else if (config.scorer == "sidecar") {
    client = std::make_unique<SidecarClient>(sidecar_options(config));
    scorer = std::make_unique<SidecarQualityScorer>(*client);
    rules = hex64(fnv1a64("sidecar-score"));
  } else {
    throw Error("unknown scorer `" + config.scorer + "`");
  }

  OrderedJson settings;
  settings["command"] = "filter";
  settings["input"] = file_digest(config.input);
  settings["scorer"] = config.scorer;
  settings["threshold"] = config.quality_threshold;
  const std::string hash = digest(settings);

  FilterResult result = filter_wellformed(questions, *scorer,
                                          config.quality_threshold,
                                          config.batch_size);
  std::vector<OrderedJson> kept, report;
  for (const GeneratedQuestion &g : result.retained) {
    OrderedJson j = generated_to_json(g);
    j["score"] = *g.quality_score;
    kept.push_back(std::move(j));
  }
  for (const ScoredQuestion &s : result.report) {
    OrderedJson j;
    j["id"] = s.question.id;
    j["question"] = s.question.text;
    j["score"] = *s.question.quality_score;
    j["retained"] = s.retained;
    report.push_back(std::move(j));
  }
  write_jsonl(config.out / "filtered.jsonl", meta_line("filtered", hash, rules),
              kept);
  write_jsonl(config.out / "scores.jsonl", meta_line("scores", hash, rules),
              report);

  OrderedJson summary;
  summary["meta"] = meta_object("filter_summary", hash, rules);
  summary["input"] = questions.size();
  summary["retained"] = result.retained.size();
  summary["threshold"] = config.quality_threshold;
  summary["scorer"] = config.scorer;
  write_json(config.out / "filter_summary.json", summary);
}

void cmd_concat(const RunConfig &config, Diagnostics &diags) {
  if (config.inputs.empty()) throw Error("concat needs at least one input");
  OrderedJson settings;
  settings["command"] = "concat";
  settings["inputs"] = OrderedJson::array();
  for (const fs::path &p : config.inputs) {
    require_file(p, "input");
    settings["inputs"].push_back(
        {{"tag", p.stem().string()}, {"digest", file_digest(p)}});
  }
  const std::string hash = digest(settings);

  std::vector<OrderedJson> rows;
  std::map<std::string, int> uses;
  for (const fs::path &p : config.inputs) {
    const std::string tag = p.stem().string();
    for (const JsonLine &line : read_jsonl(p, diags)) {
      auto id = line.value.find("id");
      if (id == line.value.end() || !id->is_string() ||
          id->get<std::string>().empty()) {
        diags.warn(p.string(), line.line, "record has no `id`; skipped");
        continue;
      }
      OrderedJson record = OrderedJson::parse(line.value.dump());
      std::string key = id->get<std::string>();
      int n = ++uses[key];
      if (n > 1) {
        std::string renamed = key + "#" + std::to_string(n);
        while (uses.count(renamed))
          renamed = key + "#" + std::to_string(++n);
        uses[renamed] = 1;
        diags.warn(p.string(), line.line,
                   "duplicate id " + key + " renamed to " + renamed);
        record["id"] = renamed;
      }
      if (!record.contains("source")) record["source"] = tag;
      rows.push_back(std::move(record));
    }
  }
  write_jsonl(config.out / "concat.jsonl",
              meta_line("concat", hash, hex64(fnv1a64("concat:suffix#n"))), rows);
}

void cmd_stats(const RunConfig &config, Diagnostics &diags) {
  std::vector<fs::path> inputs = config.inputs;
  if (!config.input.empty()) inputs.insert(inputs.begin(), config.input);
  if (inputs.empty()) throw Error("stats needs at least one input");

  OrderedJson settings;
  settings["command"] = "stats";
  settings["inputs"] = OrderedJson::array();
  for (const fs::path &p : inputs) {
    require_file(p, "input");
    settings["inputs"].push_back(file_digest(p));
  }
  const std::string hash = digest(settings);
  const std::string rules = hex64(fnv1a64("stats:mode=smallest"));

  std::vector<StatsRow> table;
  OrderedJson report;
  report["meta"] = meta_object("stats", hash, rules);
  report["rows"] = OrderedJson::array();
  std::string splits_text;
  for (const fs::path &p : inputs) {
    std::vector<std::string> texts;
    SplitCounts split;
    for (const JsonLine &line : read_jsonl(p, diags)) {
      auto q = line.value.find("question");
      if (q == line.value.end() || !q->is_string() ||
          trim(q->get<std::string>()).empty()) {
        diags.warn(p.string(), line.line, "missing or empty `question`");
        continue;
      }
      texts.push_back(q->get<std::string>());
      auto s = line.value.find("split");
      std::optional<Split> label;
      if (s != line.value.end() && s->is_string())
        label = parse_split(s->get<std::string>());
      switch (label.value_or(Split::Unsplit)) {
        case Split::Train: ++split.train; break;
        case Split::Dev: ++split.dev; break;
        case Split::Test: ++split.test; break;
        case Split::Unsplit:
          ++split.unsplit;
          diags.warn(p.string(), line.line, "record has no split label");
          break;
      }
    }
    if (texts.empty()) {
      diags.warn(p.string(), 0, "no usable records");
      continue;
    }
    StatsRow row{p.stem().string(), sentence_count_stats(texts)};
    OrderedJson j;
    j["label"] = row.label;
    j["data_size"] = row.summary.sample_count;
    j["mean"] = row.summary.mean;
    j["median"] = row.summary.median;
    j["mode"] = row.summary.mode;
    j["splits"] = {{"train", split.train},
                   {"dev", split.dev},
                   {"test", split.test},
                   {"unsplit", split.unsplit},
                   {"total", split.total()}};
    report["rows"].push_back(std::move(j));
    splits_text += "\n[" + row.label + "]\n" + format_split_table(split);
    table.push_back(std::move(row));
  }
  write_json(config.out / "stats.json", report);
  write_file_atomic(config.out / "stats.txt", text_header("stats", hash, rules) +
                                                  format_stats_table(table) +
                                                  splits_text);
}

void cmd_eval(const RunConfig &config, Diagnostics &diags) {
  require_file(config.predictions, "predictions");
  std::vector<JsonLine> preds = read_jsonl(config.predictions, diags);
  std::vector<JsonLine> refs;
  if (!config.references.empty()) {
    require_file(config.references, "references");
    refs = read_jsonl(config.references, diags);
    if (refs.size() != preds.size())
      throw Error("predictions has " + std::to_string(preds.size()) +
                  " records but references has " + std::to_string(refs.size()));
  }

  auto string_list = [](const Json &v) {
    std::vector<std::string> out;
    if (v.is_string()) out.push_back(v.get<std::string>());
    if (v.is_array())
      for (const Json &x : v)
        if (x.is_string()) out.push_back(x.get<std::string>());
    return out;
  };

  std::vector<EvalRecord> records;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const Json &p = preds[i].value;
    EvalRecord r;
    r.id = p.value("id", "");
    if (p.contains("prediction") && p["prediction"].is_string())
      r.prediction = p["prediction"].get<std::string>();
    else
      throw Error(config.predictions.string() + ":" +
                  std::to_string(preds[i].line) + ": missing `prediction`");
    const Json &src = refs.empty() ? p : refs[i].value;
    if (!refs.empty() && src.value("id", "") != r.id)
      throw Error("record " + std::to_string(i) + ": prediction id `" + r.id +
                  "` does not match reference id `" + src.value("id", "") + "`");
    if (src.contains("references")) r.references = string_list(src["references"]);
    else if (src.contains("answer")) r.references = string_list(src["answer"]);
    if (r.references.empty())
      throw Error("record `" + r.id + "` has no references");
    records.push_back(std::move(r));
  }
  if (records.empty()) throw Error("no evaluation records");

  OrderedJson settings;
  settings["command"] = "eval";
  settings["predictions"] = file_digest(config.predictions);
  settings["references"] =
      config.references.empty() ? "inline" : file_digest(config.references);
  const std::string hash = digest(settings);
  const std::string rules = hex64(fnv1a64(bleu_signature()));

  EvalReport rep = evaluate(records);
  OrderedJson j;
  j["meta"] = meta_object("eval", hash, rules);
  j["bleu_signature"] = bleu_signature();
  j["records"] = rep.count;
  j["accuracy"] = rep.accuracy;
  j["precision"] = rep.precision;
  j["recall"] = rep.recall;
  j["f1"] = rep.f1;
  j["bleu"] = rep.bleu.score;
  j["bleu_precisions"] = rep.bleu.precisions;
  j["brevity_penalty"] = rep.bleu.brevity_penalty;
  j["hyp_len"] = rep.bleu.hyp_len;
  j["ref_len"] = rep.bleu.ref_len;
  write_json(config.out / "eval.json", j);

  std::string text = text_header("eval", hash, rules);
  text += "# bleu " + std::string(bleu_signature()) + "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s  %8s  %9s  %6s  %6s  %9s\n", "Records",
                "Accuracy", "Precision", "Recall", "F1", "SacreBLEU");
  text += buf;
  std::snprintf(buf, sizeof buf, "%-8zu  %8s  %9s  %6s  %6s  %9s\n", rep.count,
                fixed(rep.accuracy, 4).c_str(), fixed(rep.precision, 4).c_str(),
                fixed(rep.recall, 4).c_str(), fixed(rep.f1, 4).c_str(),
                fixed(rep.bleu.score, 2).c_str());
  text += buf;
  write_file_atomic(config.out / "eval.txt", text);
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Turns trivia questions into short natural questions.",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  struct Flags {
    std::string config, out, provider, scorer, endpoint, vocab, annotations;
    std::string qb, nq, input, predictions, references;
    std::vector<std::string> inputs;
    std::optional<double> threshold;
    std::optional<std::size_t> batch_size;
    std::optional<long> timeout_ms;
    bool last_sentence_only = false;
  } f;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--config", f.config, "JSON run configuration");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--threshold", f.threshold, "command threshold");
    sub->add_option("--batch-size", f.batch_size, "batch size")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sidecar-endpoint", f.endpoint,
                    "host:port, tcp://host:port or exec:<command>");
    sub->add_option("--sidecar-timeout-ms", f.timeout_ms, "per-request timeout")
        ->check(CLI::PositiveNumber);
  };
  CLI::App *pair = app.add_subcommand("pair", "pair questions by answer and similarity");
  common(pair);
  pair->add_option("--qb", f.qb, "trivia questions (JSON Lines)");
  pair->add_option("--nq", f.nq, "natural questions (JSON Lines)");
  pair->add_option("--provider", f.provider, "lexical|sidecar")
      ->check(CLI::IsMember({"lexical", "sidecar"}));

  CLI::App *generate = app.add_subcommand("generate", "generate short questions");
  common(generate);
  generate->add_option("--qb", f.qb, "trivia questions (JSON Lines)");
  generate->add_option("--annotations", f.annotations, "dependency/coref file");
  generate->add_option("--vocab", f.vocab, "lemma to wh-word table");
  generate->add_flag("--last-sentence-only", f.last_sentence_only,
                     "only transform the final sentence");

  CLI::App *filter = app.add_subcommand("filter", "drop ill-formed questions");
  common(filter);
  filter->add_option("--input", f.input, "generated questions");
  filter->add_option("--scorer", f.scorer, "heuristic|sidecar")
      ->check(CLI::IsMember({"heuristic", "sidecar"}));

  CLI::App *concat = app.add_subcommand("concat", "merge datasets");
  common(concat);
  concat->add_option("inputs", f.inputs, "JSON Lines files, in order");

  CLI::App *stats = app.add_subcommand("stats", "sentence count statistics");
  common(stats);
  stats->add_option("inputs", f.inputs, "JSON Lines files with `question`");

  CLI::App *eval = app.add_subcommand("eval", "QA metrics");
  common(eval);
  eval->add_option("--predictions", f.predictions,
                   "{id, prediction[, references]} JSON Lines");
  eval->add_option("--references", f.references, "{id, references} JSON Lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Diagnostics diags;
  try {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (!f.out.empty()) c.out = f.out;
    if (!f.qb.empty()) c.qb = f.qb;
    if (!f.nq.empty()) c.nq = f.nq;
    if (!f.annotations.empty()) c.annotations = f.annotations;
    if (!f.vocab.empty()) c.vocab = f.vocab;
    if (!f.input.empty()) c.input = f.input;
    if (!f.inputs.empty()) c.inputs.assign(f.inputs.begin(), f.inputs.end());
    if (!f.predictions.empty()) c.predictions = f.predictions;
    if (!f.references.empty()) c.references = f.references;
    if (!f.provider.empty()) c.provider = f.provider;
    if (!f.scorer.empty()) c.scorer = f.scorer;
    if (const char *env = std::getenv("QUIZMORPH_SIDECAR"); env && *env)
      c.sidecar_endpoint = env;
    if (!f.endpoint.empty()) c.sidecar_endpoint = f.endpoint;
    if (f.batch_size) c.batch_size = *f.batch_size;
    if (f.timeout_ms) c.sidecar_timeout_ms = *f.timeout_ms;
    if (f.last_sentence_only) c.last_sentence_only = true;
    if (f.threshold) {
      if (pair->parsed()) c.pair_threshold = *f.threshold;
      if (filter->parsed()) c.quality_threshold = *f.threshold;
    }
    if (c.batch_size == 0) throw Error("batch size must be positive");

    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw Error("cannot create output directory " + c.out.string());

    if (pair->parsed()) cmd_pair(c, diags);
    else if (generate->parsed()) cmd_generate(c, diags);
    else if (filter->parsed()) cmd_filter(c, diags);
    else if (concat->parsed()) cmd_concat(c, diags);
    else if (stats->parsed()) cmd_stats(c, diags);
    else if (eval->parsed()) cmd_eval(c, diags);
  } catch (const std::exception &e) {
    diags.print(err);
    err << "error: " << e.what() << '\n';
    return 2;
  }
  diags.print(err);
  return diags.empty() ? 0 : 1;
}

}  // namespace quizmorph
