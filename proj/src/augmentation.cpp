#include "argmine/augmentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include <httplib.h>

#include "argmine/error.hpp"
#include "argmine/text.hpp"

namespace argmine {

using nlohmann::json;

AugmentationPlan plan_balance(const std::map<Stance, int>& counts, int target) {
  int max_count = 0;
  for (const auto& [_, n] : counts) max_count = std::max(max_count, n);
  if (target < max_count)
    throw Error(Errc::target_too_small,
                "target " + std::to_string(target) + " < max class count " +
                    std::to_string(max_count));
  AugmentationPlan plan;
  plan.target_per_class = target;
  for (Stance s : {Stance::pro, Stance::con}) {
    auto it = counts.find(s);
    const int have = it == counts.end() ? 0 : it->second;
    plan.deficits[s] = std::max(0, target - have);
  }
  return plan;
}

const char* to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::empty: return "EMPTY";
    case RejectionReason::too_short: return "TOO_SHORT";
    case RejectionReason::too_long: return "TOO_LONG";
    case RejectionReason::duplicate: return "DUPLICATE";
    case RejectionReason::wrong_language: return "WRONG_LANGUAGE";
  }
  return "?";
}

namespace {

std::string fill_template(const std::string& tmpl, const std::string& stance,
                          const std::string& topic) {
  std::string out = tmpl;
  auto replace_all = [&out](const std::string& slot, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = out.find(slot, pos)) != std::string::npos) {
      out.replace(pos, slot.size(), value);
      pos += value.size();
    }
  };
  replace_all("{stance}", stance);
  replace_all("{topic}", topic);
  return out;
}

class ReplayGenerator final : public Generator {
 public:
  explicit ReplayGenerator(const GeneratorSpec& spec) : name_(spec.name) {
    std::ifstream in(spec.endpoint);
    if (!in)
      throw Error(Errc::generator_unreachable,
                  "replay fixture not found: " + spec.endpoint);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      SyntheticAdu adu;
      adu.text = j.at("text").get<std::string>();
      adu.stance = stance_from_string(j.at("stance").get<std::string>());
      adu.generator_name = name_;
      pool_[adu.stance].push_back(std::move(adu));
    }
  }

  GenerationBatch generate(Stance stance, int n,
                           const std::vector<std::string>&) override {
    GenerationBatch batch;
    if (n <= 0) return batch;
    auto& pool = pool_[stance];
    std::size_t& cursor = cursor_[stance];
    if (cursor >= pool.size())
      throw Error(Errc::fixture_exhausted,
                  std::string("no ") + to_string(stance) +
                      " candidates left in fixture");
    const std::size_t take =
        std::min<std::size_t>(static_cast<std::size_t>(n), pool.size() - cursor);
    for (std::size_t i = 0; i < take; ++i)
      batch.candidates.push_back(pool[cursor + i]);
    cursor += take;
    if (take < static_cast<std::size_t>(n))
      batch.warnings.push_back("GENERATION_SHORTFALL: requested " +
                               std::to_string(n) + ", fixture had " +
                               std::to_string(take));
    return batch;
  }

  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  std::map<Stance, std::vector<SyntheticAdu>> pool_;
  std::map<Stance, std::size_t> cursor_;
};

// Small deterministic local generator; handy for demos when no fixture or
// endpoint is configured.
class TemplateGenerator final : public Generator {
 public:
  explicit TemplateGenerator(const GeneratorSpec& spec)
      : name_(spec.name), prompt_(spec.prompt_template) {}

  GenerationBatch generate(Stance stance, int n,
                           const std::vector<std::string>& topic_hints) override {
    GenerationBatch batch;
    for (int i = 0; i < n; ++i) {
      const std::string topic =
          topic_hints.empty() ? "the proposal"
                              : topic_hints[static_cast<std::size_t>(
                                    counter_ % topic_hints.size())];
      SyntheticAdu adu;
      adu.stance = stance;
      adu.generator_name = name_;
      std::ostringstream text;
      if (stance == Stance::con)
        text << "There are serious drawbacks to " << topic
             << " that outweigh the claimed benefits, case " << ++counter_
             << ".";
      else
        text << "The evidence clearly favors " << topic
             << " on balance, case " << ++counter_ << ".";
      adu.text = text.str();
      batch.candidates.push_back(std::move(adu));
    }
    return batch;
  }

  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  std::string prompt_;
  long counter_ = 0;
};

class HttpGenerator final : public Generator {
 public:
  explicit HttpGenerator(const GeneratorSpec& spec)
      : name_(spec.name), spec_(spec) {
    if (spec.endpoint.empty())
      throw Error(Errc::config_error, "http generator needs an endpoint");
  }

  GenerationBatch generate(Stance stance, int n,
                           const std::vector<std::string>& topic_hints) override {
    GenerationBatch batch;
    if (n <= 0) return batch;
    const std::string topic =
        topic_hints.empty() ? "the topic" : topic_hints.front();
    json request;
    request["prompt"] =
        fill_template(spec_.prompt_template, to_string(stance), topic);
    request["n"] = n;
    request["decoding"] = spec_.decoding;

    httplib::Client client(spec_.endpoint);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
    httplib::Headers headers;
    if (const char* token = std::getenv("ARGMINE_GENERATOR_TOKEN"))
      headers.emplace("Authorization", std::string("Bearer ") + token);
    auto res = client.Post("/generate", headers, request.dump(),
                           "application/json");
    if (!res)
      throw Error(Errc::generator_unreachable,
                  spec_.endpoint + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw Error(Errc::generator_unreachable,
                  spec_.endpoint + ": HTTP " + std::to_string(res->status));
    json body = json::parse(res->body);
    for (const auto& t : body.at("texts")) {
      SyntheticAdu adu;
      adu.text = t.get<std::string>();
      adu.stance = stance;
      adu.generator_name = name_;
      batch.candidates.push_back(std::move(adu));
    }
    if (static_cast<int>(batch.candidates.size()) < n)
      batch.warnings.push_back(
          "GENERATION_SHORTFALL: requested " + std::to_string(n) + ", got " +
          std::to_string(batch.candidates.size()));
    return batch;
  }

  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  GeneratorSpec spec_;
};

}  // namespace

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec) {
  if (spec.name == "replay") return std::make_unique<ReplayGenerator>(spec);
  if (spec.name == "template") return std::make_unique<TemplateGenerator>(spec);
  if (spec.name == "http") return std::make_unique<HttpGenerator>(spec);
  throw Error(Errc::config_error, "unknown generator '" + spec.name + "'");
}

FilterResult filter_malformed(const std::vector<SyntheticAdu>& candidates,
                              const std::set<std::string>& existing_normalized,
                              const FilterOptions& options) {
  FilterResult result;
  std::set<std::string> seen = existing_normalized;
  for (SyntheticAdu adu : candidates) {
    const std::string normalized = text::normalize_for_dedup(adu.text);
    std::optional<RejectionReason> reason;
    if (normalized.empty()) {
      reason = RejectionReason::empty;
    } else {
      const auto n_tokens =
          static_cast<int>(text::count_words(adu.text));
      if (n_tokens < options.min_tokens) {
        reason = RejectionReason::too_short;
      } else if (n_tokens > options.max_tokens) {
        reason = RejectionReason::too_long;
      } else if (seen.count(normalized)) {
        reason = RejectionReason::duplicate;
      } else {
        const auto profile = text::script_profile(adu.text);
        const double letters =
            static_cast<double>(profile.latin + profile.arabic);
        if (letters > 0) {
          const double expected =
              options.expected_language == Language::en
                  ? static_cast<double>(profile.latin)
                  : static_cast<double>(profile.arabic);
          if (expected / letters < options.min_script_fraction)
            reason = RejectionReason::wrong_language;
        }
      }
    }
    adu.accepted = !reason.has_value();
    adu.rejection_reason = reason;
    if (adu.accepted) {
      seen.insert(normalized);
      result.accepted.push_back(std::move(adu));
    } else {
      result.rejected.push_back(std::move(adu));
    }
  }
  return result;
}

AugmentationRun run_augmentation(const std::map<Stance, int>& counts,
                                 Generator& generator, int target,
                                 const std::set<std::string>& existing_normalized,
                                 const std::vector<std::string>& topic_hints,
                                 const AugmentOptions& options) {
  AugmentationRun run;
  run.plan = plan_balance(counts, target);

  std::set<std::string> seen = existing_normalized;
  for (Stance stance : {Stance::pro, Stance::con}) {
    int remaining = run.plan.deficits.at(stance);
    int rounds = 0;
    while (remaining > 0) {
      if (++rounds > options.max_rounds)
        throw Error(Errc::shortfall,
                    std::string("retry budget exhausted for ") +
                        to_string(stance) + "; achieved " +
                        std::to_string(run.plan.deficits.at(stance) - remaining) +
                        "/" + std::to_string(run.plan.deficits.at(stance)));
      const int request = std::min(remaining, options.batch_size);
      GenerationBatch batch;
      try {
        batch = generator.generate(stance, request, topic_hints);
        ++run.generator_calls;
      } catch (const Error& e) {
        if (e.code() == Errc::fixture_exhausted ||
            e.code() == Errc::generator_unreachable)
          throw Error(Errc::shortfall,
                      std::string(to_string(stance)) + ": achieved " +
                          std::to_string(run.plan.deficits.at(stance) -
                                         remaining) +
                          "/" + std::to_string(run.plan.deficits.at(stance)) +
                          " (" + e.what() + ")");
        throw;
      }
      run.warnings.insert(run.warnings.end(), batch.warnings.begin(),
                          batch.warnings.end());
      FilterResult filtered =
          filter_malformed(batch.candidates, seen, options.filter);
      for (auto& adu : filtered.accepted) {
        if (remaining == 0) break;
        seen.insert(text::normalize_for_dedup(adu.text));
        run.accepted.push_back(std::move(adu));
        --remaining;
      }
      run.rejected.insert(run.rejected.end(), filtered.rejected.begin(),
                          filtered.rejected.end());
    }
  }
  return run;
}

void write_review_csv(const std::vector<SyntheticAdu>& rejected,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += "\"\"";
      else q.push_back(c);
    }
    return q + "\"";
  };
  out << "text,stance,generator,reason\n";
  for (const auto& adu : rejected)
    out << quote(adu.text) << "," << to_string(adu.stance) << ","
        << quote(adu.generator_name) << ","
        << (adu.rejection_reason ? to_string(*adu.rejection_reason) : "") << "\n";
}

void write_synth_jsonl(const std::vector<SyntheticAdu>& accepted,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  for (const auto& adu : accepted) {
    json j{{"generator", adu.generator_name},
           {"stance", to_string(adu.stance)},
           {"text", adu.text}};
    out << j.dump() << "\n";
  }
}

std::vector<SyntheticAdu> load_synth_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  std::vector<SyntheticAdu> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    SyntheticAdu adu;
    adu.text = j.at("text").get<std::string>();
    adu.stance = stance_from_string(j.at("stance").get<std::string>());
    adu.generator_name = j.value("generator", "");
    adu.accepted = true;
    out.push_back(std::move(adu));
  }
  return out;
}

}  // namespace argmine
