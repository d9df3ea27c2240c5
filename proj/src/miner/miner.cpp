#include "miner/miner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace elminer {

void MinerConfig::validate() const {
  if (min_support <= 0 || min_support > 1) throw std::invalid_argument("min-support must be in (0,1]");
  if (max_depth < 1) throw std::invalid_argument("max-depth must be at least 1");
  if (batch_size < 1) throw std::invalid_argument("batch-size must be at least 1");
  if (sample_size && *sample_size < 1) throw std::invalid_argument("sample-size must be at least 1");
  for (auto& r : ignore_predicates) {
    try {
      std::regex re(r);
    } catch (const std::regex_error&) {
      throw std::invalid_argument("ignore-predicate is not a valid regular expression: " + r);
    }
  }
}

Weighting uniform_weighting(const std::vector<RdfTerm>& uris) {
  auto distinct = make_proof_set(uris);
  Weighting w;
  if (distinct.empty()) return w;
  Rational each(1, static_cast<long>(distinct.size()));
  for (auto& u : distinct) w[u] = each;
  return w;
}

void sort_by_pattern(std::vector<MinedPattern>& patterns) {
  std::vector<std::pair<std::string, MinedPattern>> keyed;
  keyed.reserve(patterns.size());
  for (auto& m : patterns) keyed.emplace_back(canonical_key(m.pattern), std::move(m));
  std::stable_sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
  patterns.clear();
  for (auto& [k, m] : keyed) patterns.push_back(std::move(m));
}

Miner::Miner(MinerConfig config, TripleSource& source, Diagnostics* diag, const CancellationToken* token)
    : config_(std::move(config)), source_(source), diag_(diag), token_(token) {
  config_.validate();
  for (auto& r : config_.ignore_predicates) ignore_.emplace_back(r);
}

bool Miner::ignored(const std::string& predicate) const {
  return std::any_of(ignore_.begin(), ignore_.end(),
                     [&](const std::regex& re) { return std::regex_search(predicate, re); });
}

void Miner::check_cancel() const {
  if (token_ && token_->cancelled()) throw Cancelled();
}

std::vector<MinedPattern> Miner::mine_datatype(const std::vector<RdfTerm>& literals, const Weighting& w) const {
  struct Stats {
    Rational support = 0;
    std::vector<RdfTerm> proof;
    std::optional<RdfTerm> lo, hi;
    bool comparable = true;
  };
  std::map<DatatypeId, Stats> stats;
  for (auto& l : make_proof_set(literals)) {
    if (!l.is_literal()) continue;
    for (DatatypeId t : candidate_datatypes(l, diag_)) {
      auto& st = stats[t];
      st.support += weight_of(w, l);
      st.proof.push_back(l);
      if (!gt_eligible(t) || !st.comparable) continue;
      if (!has_comparable_value(l, t)) {
        st.comparable = false;
        if (diag_) diag_->count("bounds_suppressed_invalid_literal");
        continue;
      }
      if (!st.lo) {
        st.lo = st.hi = l;
        continue;
      }
      auto c_lo = value_compare(l, *st.lo, t, diag_);
      if (c_lo < 0 || (c_lo == 0 && l.value() < st.lo->value())) st.lo = l;
      auto c_hi = value_compare(l, *st.hi, t, diag_);
      if (c_hi > 0 || (c_hi == 0 && l.value() < st.hi->value())) st.hi = l;
    }
  }
  std::vector<MinedPattern> out;
  for (auto& [t, st] : stats) {
    if (st.support < config_.min_support) continue;
    std::vector<Pattern> parts{Pattern::datatype(t)};
    if (st.comparable && st.lo) {
      parts.push_back(Pattern::min_inclusive(t, *st.lo));
      if (lt_eligible(t)) parts.push_back(Pattern::max_inclusive(t, *st.hi));
    }
    out.push_back({Pattern::conjunction(parts), make_proof_set(st.proof), st.support});
  }
  return out;
}

std::vector<MinedPattern> Miner::mine_type(const ThreeLevelIndex& idx, const Weighting& w) const {
  std::vector<MinedPattern> out;
  if (!idx.has(vocab::kRdfType)) return out;
  for (auto& [a, subjects] : idx.at(vocab::kRdfType)) {
    if (!a.is_iri()) {
      if (diag_) diag_->count(a.is_literal() ? "literal_type_objects_skipped" : "blank_type_objects_skipped");
      continue;
    }
    ProofSet s(subjects.begin(), subjects.end());
    Rational sigma = support_of_set(s, w);
    if (sigma >= config_.min_support) out.push_back({Pattern::named_class(a.value()), std::move(s), sigma});
  }
  return out;
}

std::vector<MinedPattern> Miner::mine_value(const ThreeLevelIndex& idx, const std::string& p,
                                            const Weighting& w) const {
  std::vector<MinedPattern> out;
  for (auto& [b, subjects] : idx.at(p)) {
    if (b.is_blank()) {
      if (diag_) diag_->count("blank_value_objects_skipped");
      continue;
    }
    ProofSet s(subjects.begin(), subjects.end());
    Rational sigma = support_of_set(s, w);
    if (sigma >= config_.min_support) out.push_back({Pattern::value(p, b), std::move(s), sigma});
  }
  return out;
}

std::optional<MinedPattern> Miner::mine_self(const ThreeLevelIndex& idx, const std::string& p,
                                             const Weighting& w) const {
  const auto& objects = idx.at(p);
  std::vector<RdfTerm> proof;
  for (auto& s : idx.subjects_of(p)) {
    auto it = objects.find(s);
    if (it != objects.end() && it->second.count(s)) proof.push_back(s);
  }
  ProofSet s = make_proof_set(std::move(proof));
  Rational sigma = support_of_set(s, w);
  if (s.empty() || sigma < config_.min_support) return std::nullopt;
  return MinedPattern{Pattern::self(p), std::move(s), sigma};
}

std::vector<MinedPattern> Miner::mine_enum(const std::vector<RdfTerm>& uris, const std::vector<RdfTerm>& literals,
                                           const Weighting& w) const {
  std::vector<RdfTerm> all = uris;
  all.insert(all.end(), literals.begin(), literals.end());
  std::vector<MinedPattern> out;
  for (auto& b : make_proof_set(std::move(all))) {
    if (b.is_blank()) continue;
    Rational wb = weight_of(w, b);
    if (wb >= config_.min_support) out.push_back({Pattern::enumeration(b), {b}, wb});
  }
  return out;
}

std::vector<MinedPattern> Miner::mine_closed_conjunctions(const std::vector<MinedPattern>& patterns) {
  std::map<ProofSet, std::vector<const MinedPattern*>> groups;
  for (auto& m : patterns) groups[m.proof_set].push_back(&m);
  std::vector<MinedPattern> out;
  for (auto& [s, members] : groups) {
    std::vector<Pattern> parts;
    for (auto* m : members) parts.push_back(m->pattern);
    out.push_back({Pattern::conjunction(parts), s, members.front()->support});
  }
  sort_by_pattern(out);
  return out;
}

Redistribution Miner::redistribute(const ThreeLevelIndex& idx, const std::string& p, const Weighting& w) {
  const auto& objects = idx.at(p);
  std::map<RdfTerm, long> den;
  Redistribution r;
  for (auto& [o, subjects] : objects) {
    if (o.is_iri()) r.uris.push_back(o);
    if (o.is_literal()) r.literals.push_back(o);
    for (auto& s : subjects) ++den[s];
  }
  for (auto& [o, subjects] : objects) {
    Rational sum = 0;
    for (auto& s : subjects) sum += weight_of(w, s) / Rational(den[s]);
    r.weights[o] = sum;
  }
  return r;
}

std::vector<MinedPattern> Miner::mine_some(const ThreeLevelIndex& idx, const std::string& p, const Weighting& w,
                                           int level) {
  Redistribution r = redistribute(idx, p, w);
  if (r.uris.empty() && r.literals.empty()) {
    if (diag_) diag_->count("some_skipped_no_objects");
    return {};
  }
  if (on_redistribute) on_redistribute(p, level + 1, r);
  const auto& objects = idx.at(p);
  std::vector<MinedPattern> out;
  for (auto& inner : mine_scope(r.uris, r.literals, r.weights, level + 1)) {
    std::vector<RdfTerm> subjects;
    for (auto& o : inner.proof_set) {
      auto it = objects.find(o);
      if (it != objects.end()) subjects.insert(subjects.end(), it->second.begin(), it->second.end());
    }
    ProofSet s = make_proof_set(std::move(subjects));
    Rational sigma = support_of_set(s, w);
    out.push_back({Pattern::some(p, inner.pattern), std::move(s), sigma});
  }
  return out;
}

ThreeLevelIndex Miner::scope_index(const std::vector<RdfTerm>& uris, const Weighting& w) {
  std::vector<RdfTerm> query;
  std::unordered_set<RdfTerm, RdfTermHash> in_scope;
  for (auto& u : make_proof_set(uris)) {
    in_scope.insert(u);
    if (u.is_iri()) {
      query.push_back(u);
    } else if (diag_) {
      diag_->count("unqueryable_subjects");
    }
  }
  std::vector<Triple> triples;
  if (!query.empty()) {
    auto fetched = source_.fetch(query, token_);
    if (on_retrieved) on_retrieved(fetched);
    triples.reserve(fetched.size());
    for (auto& t : fetched) {
      if (!in_scope.count(t.subject)) {
        if (diag_) diag_->count("out_of_scope_triples");
        continue;
      }
      if (ignored(t.predicate.value())) {
        if (diag_) diag_->count("ignored_triples");
        continue;
      }
      triples.push_back(t);
    }
  }
  return ThreeLevelIndex::build(triples).pruned(w, config_.min_support);
}

std::vector<MinedPattern> Miner::predicate_patterns(const ThreeLevelIndex& idx, const std::string& p,
                                                    const Weighting& w, int level) {
  std::vector<MinedPattern> pp;
  if (p == vocab::kRdfType) {
    pp = mine_type(idx, w);
  } else {
    pp = mine_value(idx, p, w);
    if (auto self = mine_self(idx, p, w)) pp.push_back(std::move(*self));
  }
  // Some-patterns only where nothing shallower was found, and only while depth stays within bounds.
  if (pp.empty() && level + 1 < config_.max_depth) pp = mine_some(idx, p, w, level);
  sort_by_pattern(pp);
  return pp;
}

std::vector<MinedPattern> Miner::mine_scope(const std::vector<RdfTerm>& uris, const std::vector<RdfTerm>& literals,
                                      const Weighting& w, int level) {
  check_cancel();
  std::vector<MinedPattern> all = mine_enum(uris, literals, w);
  auto dt = mine_datatype(literals, w);
  all.insert(all.end(), dt.begin(), dt.end());
  ThreeLevelIndex idx = scope_index(uris, w);
  for (auto& [p, objects] : idx.levels()) {
    check_cancel();
    auto pp = predicate_patterns(idx, p, w, level);
    all.insert(all.end(), pp.begin(), pp.end());
  }
  return mine_closed_conjunctions(all);
}

MineResult Miner::run(const std::vector<RdfTerm>& uris, const Weighting& w, const EmitSink& sink) {
  MineResult result;
  bool stopped = false;
  auto stop = [&](const std::string& reason) {
    result.partial = true;
    result.stop_reason = reason;
    stopped = true;
  };
  auto emit_all = [&](std::vector<MinedPattern> batch) {
    for (auto& m : batch) {
      if (token_ && token_->cancelled()) {
        stop("cancelled");
        return;
      }
      if (sink) sink(m);
      result.emitted.push_back(std::move(m));
    }
  };

  try {
    auto global = mine_enum(uris, {}, w);
    sort_by_pattern(global);
    emit_all(std::move(global));
    if (!stopped) {
      check_cancel();
      ThreeLevelIndex idx = scope_index(uris, w);
      for (auto& [p, objects] : idx.levels()) {
        if (token_ && token_->cancelled()) {
          stop("cancelled");
          break;
        }
        emit_all(predicate_patterns(idx, p, w, 0));
        if (stopped) break;
      }
    }
  } catch (const Cancelled&) {
    stop("cancelled");
  } catch (const QueryBudgetExceeded& e) {
    if (diag_) diag_->warn(e.what());
    stop(e.what());
  } catch (const FetchError& e) {
    if (diag_) diag_->warn(e.what());
    stop(std::string("fetch failed: ") + e.what());
  }
  result.closed = mine_closed_conjunctions(result.emitted);
  return result;
}

MineResult initial_call(Miner& miner, const std::vector<RdfTerm>& uris, const CoverageFilter& covered,
                        const EmitSink& sink, Diagnostics* diag) {
  if (uris.empty()) throw EmptyTargetSet();
  Weighting w = uniform_weighting(uris);
  auto keep = [&](const MinedPattern& m) {
    if (!covered || !covered(m.pattern)) return true;
    if (diag) diag->count("suppressed_by_ontology");
    return false;
  };
  MineResult raw = miner.run(uris, w, [&](const MinedPattern& m) {
    if (sink && keep(m)) sink(m);
  });
  MineResult out;
  out.partial = raw.partial;
  out.stop_reason = raw.stop_reason;
  for (auto& m : raw.emitted) {
    if (!covered || !covered(m.pattern)) out.emitted.push_back(m);
  }
  for (auto& m : raw.closed) {
    if (keep(m)) out.closed.push_back(m);
  }
  return out;
}

}  // namespace elminer
