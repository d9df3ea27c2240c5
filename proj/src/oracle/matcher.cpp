#include "oracle/matcher.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace elminer {

namespace {

bool has_datatype(const RdfTerm& literal, DatatypeId dt) {
  auto types = candidate_datatypes(literal);
  return std::find(types.begin(), types.end(), dt) != types.end();
}

bool within_bound(const RdfTerm& a, const Pattern& facet, Diagnostics* diag) {
  DatatypeId dt = facet.datatype_id();
  if (!a.is_literal() || !has_datatype(a, dt) || !has_comparable_value(a, dt)) return false;
  auto cmp = value_compare(a, facet.term(), dt, diag);
  return facet.kind() == Pattern::Kind::MaxInclusive ? cmp <= 0 : cmp >= 0;
}

}  // namespace

bool matches(const LocalGraph& g, const RdfTerm& a, const Pattern& c, Diagnostics* diag) {
  using K = Pattern::Kind;
  switch (c.kind()) {
    case K::NamedClass:
      return g.contains(a, vocab::kRdfType, RdfTerm::iri(c.iri()));
    case K::And:
    case K::AndRange:
      return std::all_of(c.children().begin(), c.children().end(),
                         [&](const Pattern& x) { return matches(g, a, x, diag); });
    case K::Enum:
    case K::EnumLiteral:
      return a == c.term();
    case K::SomeObject:
    case K::SomeData:
      for (auto& b : g.objects(a, c.iri())) {
        if (matches(g, b, c.filler(), diag)) return true;
      }
      return false;
    case K::ValueObject:
    case K::ValueData:
      return g.contains(a, c.iri(), c.term());
    case K::SelfRestriction:
      return g.contains(a, c.iri(), a);
    case K::Datatype:
      return a.is_literal() && has_datatype(a, c.datatype_id());
    case K::MaxInclusive:
    case K::MinInclusive:
      return within_bound(a, c, diag);
  }
  return false;
}

SupportResult support_of(const LocalGraph& g, const std::vector<RdfTerm>& candidates, const Pattern& c,
                         const Weighting& w) {
  std::vector<RdfTerm> hits;
  for (auto& s : candidates) {
    if (matches(g, s, c)) hits.push_back(s);
  }
  SupportResult r;
  r.proof_set = make_proof_set(std::move(hits));
  r.support = support_of_set(r.proof_set, w);
  return r;
}

namespace {

class Enumerator {
 public:
  Enumerator(const LocalGraph& g, const Rational& min_support, int max_depth, const OracleOptions& opt)
      : theta_(min_support), max_depth_(max_depth), opt_(opt) {
    // only IRI subjects can be retrieved; blank nodes stay opaque
    for (auto& t : g.triples()) {
      if (!t.subject.is_blank()) g_.add(t);
    }
    for (auto& t : g_.triples()) {
      if (t.predicate.value() == vocab::kRdfType) {
        if (t.object.is_iri()) classes_.insert(t.object.value());
      } else if (!t.object.is_blank()) {
        values_[t.predicate.value()].insert(t.object);
      }
    }
  }

  std::vector<MinedPattern> scope(const std::vector<RdfTerm>& uris, const std::vector<RdfTerm>& literals,
                                  const Weighting& w, int level) {
    std::vector<RdfTerm> candidates = uris;
    candidates.insert(candidates.end(), literals.begin(), literals.end());
    candidates = make_proof_set(std::move(candidates));

    std::vector<MinedPattern> frequent;
    auto consider = [&](const Pattern& p) -> bool {
      tick();
      auto r = support_of(g_, candidates, p, w);
      if (r.proof_set.empty() || r.support < theta_) return false;
      frequent.push_back({p, r.proof_set, r.support});
      return true;
    };

    for (auto& t : candidates) {
      if (!t.is_blank()) consider(Pattern::enumeration(t));
    }

    for (DatatypeId dt : all_datatypes()) {
      auto base = support_of(g_, literals, Pattern::datatype(dt), w);
      tick();
      if (base.proof_set.empty() || base.support < theta_) continue;
      Pattern p = Pattern::datatype(dt);
      bool comparable = std::all_of(base.proof_set.begin(), base.proof_set.end(),
                                    [&](const RdfTerm& l) { return has_comparable_value(l, dt); });
      if (comparable && gt_eligible(dt)) {
        // tightest bounds; equal values resolve to the smaller lexical form
        auto lo = base.proof_set.front(), hi = base.proof_set.front();
        for (auto& l : base.proof_set) {
          auto c_lo = value_compare(l, lo, dt);
          if (c_lo < 0 || (c_lo == 0 && l.value() < lo.value())) lo = l;
          auto c_hi = value_compare(l, hi, dt);
          if (c_hi > 0 || (c_hi == 0 && l.value() < hi.value())) hi = l;
        }
        std::vector<Pattern> parts{p, Pattern::min_inclusive(dt, lo)};
        if (lt_eligible(dt)) parts.push_back(Pattern::max_inclusive(dt, hi));
        p = Pattern::conjunction(parts);
      }
      auto r = support_of(g_, literals, p, w);
      if (r.proof_set != base.proof_set) throw std::logic_error("bounded range lost members: " + serialize(p));
      frequent.push_back({p, r.proof_set, r.support});
    }

    std::set<std::string> predicates;
    for (auto& s : uris) {
      for (auto& [p, o] : g_.outgoing(s)) predicates.insert(p.value());
    }
    for (auto& p : predicates) {
      Rational pred_support = 0;
      for (auto& s : uris) {
        if (!g_.objects(s, p).empty()) pred_support += weight_of(w, s);
      }
      if (pred_support < theta_) continue;

      bool shallow = false;
      if (p == vocab::kRdfType) {
        for (auto& a : classes_) shallow |= consider(Pattern::named_class(a));
      } else {
        for (auto& b : values_[p]) shallow |= consider(Pattern::value(p, b));
        shallow |= consider(Pattern::self(p));
      }
      if (shallow || level + 1 >= max_depth_) continue;

      std::vector<RdfTerm> next_uris, next_literals;
      Weighting next_w;
      for (auto& s : uris) {
        auto objs = g_.objects(s, p);
        if (objs.empty()) continue;
        Rational share = weight_of(w, s) / Rational(static_cast<long>(objs.size()));
        for (auto& o : objs) {
          next_w[o] += share;
          if (o.is_iri()) next_uris.push_back(o);
          if (o.is_literal()) next_literals.push_back(o);
        }
      }
      next_uris = make_proof_set(std::move(next_uris));
      next_literals = make_proof_set(std::move(next_literals));
      if (next_uris.empty() && next_literals.empty()) continue;
      for (auto& inner : scope(next_uris, next_literals, next_w, level + 1)) {
        Pattern some = Pattern::some(p, inner.pattern);
        tick();
        auto r = support_of(g_, candidates, some, w);
        frequent.push_back({some, r.proof_set, r.support});
      }
    }

    std::map<ProofSet, std::vector<MinedPattern>> groups;
    for (auto& m : frequent) groups[m.proof_set].push_back(m);
    std::vector<MinedPattern> out;
    for (auto& [s, members] : groups) {
      std::vector<Pattern> parts;
      for (auto& m : members) parts.push_back(m.pattern);
      out.push_back({Pattern::conjunction(parts), s, support_of_set(s, w)});
    }
    return out;
  }

 private:
  void tick() {
    if (++generated_ > opt_.candidate_cap) {
      throw CombinatorialBudgetExceeded("oracle generated more than " + std::to_string(opt_.candidate_cap) +
                                        " candidates");
    }
  }

  LocalGraph g_;
  Rational theta_;
  int max_depth_;
  OracleOptions opt_;
  std::set<std::string> classes_;
  std::map<std::string, std::set<RdfTerm>> values_;
  std::size_t generated_ = 0;
};

}  // namespace

std::vector<MinedPattern> enumerate_shallowest_frequent(const LocalGraph& g, const std::vector<RdfTerm>& uris,
                                                        const std::vector<RdfTerm>& literals, const Weighting& w,
                                                        const Rational& min_support, int max_depth,
                                                        const OracleOptions& options) {
  Enumerator e(g, min_support, max_depth, options);
  return e.scope(make_proof_set(uris), make_proof_set(literals), w, 0);
}

}  // namespace elminer
