#include "specsift/groundtruth.hpp"

#include <algorithm>
#include <functional>

namespace specsift {

std::vector<int32_t> EnumerationBounds::int_domain() const {
  std::vector<int32_t> values;
  for (int64_t v = int_lo; v <= int_hi; ++v) values.push_back(static_cast<int32_t>(v));
  for (int32_t s : sentinels) values.push_back(s);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

namespace {

struct Slot {
  enum class Where { PreField, PostField, Param, Result };
  Where where = Where::PostField;
  std::string name;
  Type type = Type::Int;
};

// The result slot uses an engaged/absent optional; all other slots always
// carry a value (Null models an unallocated array field).
struct SlotDomain {
  std::vector<std::optional<Value>> values;
};

std::vector<Value> array_domain(const EnumerationBounds& bounds) {
  std::vector<Value> out;
  out.push_back(Value::null());
  std::vector<int32_t> elems;
  for (int64_t v = bounds.elem_lo; v <= bounds.elem_hi; ++v)
    elems.push_back(static_cast<int32_t>(v));
  if (elems.empty()) elems.push_back(0);
  for (int len = 0; len <= bounds.array_len_max; ++len) {
    std::vector<size_t> idx(static_cast<size_t>(len), 0);
    while (true) {
      std::vector<int32_t> arr(static_cast<size_t>(len));
      for (int i = 0; i < len; ++i) arr[static_cast<size_t>(i)] = elems[idx[static_cast<size_t>(i)]];
      out.push_back(Value::from_array(std::move(arr)));
      int pos = len - 1;
      while (pos >= 0) {
        if (++idx[static_cast<size_t>(pos)] < elems.size()) break;
        idx[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

SlotDomain domain_for(const Slot& slot, const EnumerationBounds& bounds) {
  SlotDomain d;
  bool is_result = slot.where == Slot::Where::Result;
  if (is_result) d.values.push_back(std::nullopt);  // void-or-null result
  switch (slot.type) {
    case Type::Int:
      for (int32_t v : bounds.int_domain()) d.values.push_back(Value::from_int(v));
      break;
    case Type::Bool:
      d.values.push_back(Value::from_bool(false));
      d.values.push_back(Value::from_bool(true));
      break;
    case Type::IntArray: {
      for (auto& v : array_domain(bounds)) {
        if (is_result && v.is_null()) continue;  // a null result is just absent
        d.values.push_back(std::move(v));
      }
      break;
    }
    case Type::Void:
      break;
  }
  return d;
}

std::optional<std::vector<Slot>> build_slots(const ReferencedSlots& refs,
                                             const MethodSignature& sig) {
  std::vector<Slot> slots;
  for (const auto& name : refs.pre_fields) {
    const FieldDecl* f = sig.find_field(name);
    if (!f) return std::nullopt;
    slots.push_back({Slot::Where::PreField, name, f->type});
  }
  for (const auto& name : refs.post_fields) {
    const FieldDecl* f = sig.find_field(name);
    if (!f) return std::nullopt;
    slots.push_back({Slot::Where::PostField, name, f->type});
  }
  for (const auto& name : refs.params) {
    const Param* p = sig.find_param(name);
    if (!p) return std::nullopt;
    slots.push_back({Slot::Where::Param, name, p->type});
  }
  if (refs.uses_result) slots.push_back({Slot::Where::Result, "result", sig.return_type});
  return slots;
}

/// Enumerates every tuple over the slots, invoking `visit(trace)`; stops
/// early when visit returns false. Returns BoundsExplosion when the tuple
/// count exceeds the ceiling, otherwise whether visitation ran to the end.
std::variant<bool, BoundsExplosion> enumerate_tuples(
    const std::vector<Slot>& slots, const EnumerationBounds& bounds,
    const std::function<bool(const TraceRecord&)>& visit) {
  std::vector<SlotDomain> domains;
  double count = 1;
  for (const auto& slot : slots) {
    domains.push_back(domain_for(slot, bounds));
    size_t n = domains.back().values.size();
    if (n == 0) return true;  // empty domain: nothing to enumerate
    count *= static_cast<double>(n);
  }
  if (count > static_cast<double>(bounds.max_tuples)) {
    uint64_t reported = count > 1e18 ? UINT64_MAX : static_cast<uint64_t>(count);
    return BoundsExplosion{reported, bounds.max_tuples};
  }

  TraceRecord trace;
  std::vector<size_t> idx(slots.size(), 0);
  auto apply = [&](size_t i) {
    const auto& v = domains[i].values[idx[i]];
    switch (slots[i].where) {
      case Slot::Where::PreField:
      case Slot::Where::Param:
        trace.pre_state[slots[i].name] = *v;
        break;
      case Slot::Where::PostField:
        trace.post_state[slots[i].name] = *v;
        break;
      case Slot::Where::Result:
        trace.result = v;
        break;
    }
  };
  for (size_t i = 0; i < slots.size(); ++i) apply(i);

  while (true) {
    if (!visit(trace)) return false;
    size_t pos = slots.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < domains[pos].values.size()) {
        apply(pos);
        break;
      }
      idx[pos] = 0;
      apply(pos);
      if (pos == 0) return true;
    }
    if (slots.empty()) return true;
  }
}

std::variant<bool, BoundsExplosion> check_implication(
    const std::vector<CandidateAssertion>& premises, const CandidateAssertion& conclusion,
    const MethodSignature& sig, const EnumerationBounds& bounds) {
  ReferencedSlots refs = referenced_slots(conclusion);
  for (const auto& p : premises) merge_slots(refs, referenced_slots(p));
  auto slots = build_slots(refs, sig);
  if (!slots) return false;  // assertion references names outside the signature

  bool holds = true;
  auto visit = [&](const TraceRecord& t) {
    for (const auto& p : premises) {
      if (eval_assertion(p, t) != Truth::True) return true;  // tuple excluded
    }
    if (eval_assertion(conclusion, t) != Truth::True) {
      holds = false;
      return false;
    }
    return true;
  };
  auto outcome = enumerate_tuples(*slots, bounds, visit);
  if (std::holds_alternative<BoundsExplosion>(outcome)) return outcome;
  return holds;
}

std::variant<bool, BoundsExplosion> check_satisfiable(
    const std::vector<CandidateAssertion>& premises, const MethodSignature& sig,
    const EnumerationBounds& bounds) {
  ReferencedSlots refs;
  for (const auto& p : premises) merge_slots(refs, referenced_slots(p));
  auto slots = build_slots(refs, sig);
  if (!slots) return false;

  bool satisfiable = false;
  auto visit = [&](const TraceRecord& t) {
    for (const auto& p : premises) {
      if (eval_assertion(p, t) != Truth::True) return true;
    }
    satisfiable = true;
    return false;
  };
  auto outcome = enumerate_tuples(*slots, bounds, visit);
  if (std::holds_alternative<BoundsExplosion>(outcome)) return outcome;
  return satisfiable;
}

}  // namespace

std::variant<bool, BoundsExplosion> implies(const std::vector<CandidateAssertion>& premises,
                                            const CandidateAssertion& conclusion,
                                            const MethodSignature& sig,
                                            const EnumerationBounds& bounds) {
  return check_implication(premises, conclusion, sig, bounds);
}

std::variant<MetricsReport, BoundsExplosion> score(
    const std::vector<CandidateAssertion>& inferred,
    const std::vector<CandidateAssertion>& ground_truth, const MethodSignature& sig,
    const EnumerationBounds& bounds) {
  MetricsReport report;
  report.a_total = static_cast<int>(inferred.size());
  report.g_total = static_cast<int>(ground_truth.size());

  auto sat = check_satisfiable(ground_truth, sig, bounds);
  if (auto* be = std::get_if<BoundsExplosion>(&sat)) return *be;
  report.gt_vacuous = !std::get<bool>(sat);

  std::vector<CandidateAssertion> valid;
  for (const auto& a : inferred) {
    auto outcome = check_implication(ground_truth, a, sig, bounds);
    if (auto* be = std::get_if<BoundsExplosion>(&outcome)) return *be;
    bool ok = std::get<bool>(outcome);
    report.verdict_labels[a.id] = ok;
    if (ok) {
      valid.push_back(a);
    } else {
      report.invalid_ids.push_back(a.id);
    }
  }
  report.a_valid = static_cast<int>(valid.size());

  for (const auto& g : ground_truth) {
    auto outcome = check_implication(valid, g, sig, bounds);
    if (auto* be = std::get_if<BoundsExplosion>(&outcome)) return *be;
    if (std::get<bool>(outcome)) ++report.g_implied;
  }

  if (report.a_total > 0) {
    report.precision = static_cast<double>(report.a_valid) / report.a_total;
  }
  if (report.g_total > 0) {
    report.recall = static_cast<double>(report.g_implied) / report.g_total;
  }
  if (report.precision && report.recall && *report.precision > 0 && *report.recall > 0) {
    report.f1 = 2.0 * *report.precision * *report.recall / (*report.precision + *report.recall);
  }
  return report;
}

VerdictConfusion verdict_confusion(const std::map<uint64_t, VerdictKind>& verdicts,
                                   const std::set<uint64_t>& invalid_ids) {
  VerdictConfusion c;
  for (const auto& [id, verdict] : verdicts) {
    bool invalid = invalid_ids.count(id) > 0;
    if (verdict == VerdictKind::Failed) {
      invalid ? ++c.tp : ++c.fp;
    } else {
      invalid ? ++c.fn : ++c.tn;
    }
  }
  if (c.tp + c.fp > 0) c.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) c.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  return c;
}

std::map<uint64_t, Attribution> attribute_discards(const InferenceResult& before,
                                                   const InferenceResult& after,
                                                   const std::vector<NewTestInfo>& new_tests) {
  std::map<uint64_t, Attribution> out;
  if (before.vacuous) return out;
  for (const auto& a : before.survivors) {
    const Falsification* f = nullptr;
    if (auto it = after.falsified.find(a.id); it != after.falsified.end()) {
      f = &it->second;
    } else if (auto it2 = after.undefined_only.find(a.id); it2 != after.undefined_only.end()) {
      f = &it2->second;
    }
    if (!f) continue;
    Attribution attr;
    attr.test_id = f->test_id;
    attr.undefined = f->undefined;
    attr.kind = KillKind::Collateral;
    for (const auto& nt : new_tests) {
      if (nt.test_id == f->test_id && nt.target_assertion == a.id) {
        attr.kind = KillKind::Targeted;
        break;
      }
    }
    out[a.id] = attr;
  }
  return out;
}

}  // namespace specsift
