#pragma once
// Line-delimited record text for solver inputs and outputs. One record per
// line, a leading tag naming the record type, then key=value fields in a
// fixed canonical order. Floating values use shortest round-trip decimal
// text, so serialize -> parse -> serialize is the identity on bytes.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "biarc/biarc.hpp"
#include "biarc/sweep.hpp"

namespace biarc {

enum class RecordKind : std::uint8_t {
  Input,   // Hermite data only, awaiting a solve
  Solved,  // Hermite data plus the computed biarc
  Error,   // Hermite data plus a typed failure
};

struct BiarcRecord {
  RecordKind record_kind = RecordKind::Input;
  HermiteData<double> input{};
  OutcomeKind outcome = OutcomeKind::Ok;     // Solved / Error records
  SolveKind solve_kind = SolveKind::Unique;  // Solved records only
  double residual_norm = 0;
  double ell0 = 0, kappa0 = 0, ell1 = 0, kappa1 = 0;
  double x_joint = 0, y_joint = 0, theta_joint = 0;
  double total_length = 0;
};

inline std::string_view outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Ok: return "ok";
    case OutcomeKind::DegenerateChord: return "degenerate_chord";
    case OutcomeKind::NoSolution: return "no_solution";
    case OutcomeKind::NonPositiveLength: return "non_positive_length";
  }
  return "unknown";
}

inline std::optional<OutcomeKind> outcome_from_name(std::string_view s) {
  if (s == "ok") return OutcomeKind::Ok;
  if (s == "degenerate_chord") return OutcomeKind::DegenerateChord;
  if (s == "no_solution") return OutcomeKind::NoSolution;
  if (s == "non_positive_length") return OutcomeKind::NonPositiveLength;
  return std::nullopt;
}

inline std::string_view solve_kind_name(SolveKind k) {
  switch (k) {
    case SolveKind::Unique: return "unique";
    case SolveKind::LeastSquares: return "least_squares";
    case SolveKind::Inconsistent: return "inconsistent";
    case SolveKind::NullMatrix: return "null_matrix";
  }
  return "unknown";
}

inline std::optional<SolveKind> solve_kind_from_name(std::string_view s) {
  if (s == "unique") return SolveKind::Unique;
  if (s == "least_squares") return SolveKind::LeastSquares;
  if (s == "inconsistent") return SolveKind::Inconsistent;
  if (s == "null_matrix") return SolveKind::NullMatrix;
  return std::nullopt;
}

// Shortest decimal text that parses back to the same double, including the
// sign of zero.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

inline BiarcRecord make_input_record(const HermiteData<double>& h) {
  BiarcRecord rec;
  rec.record_kind = RecordKind::Input;
  rec.input = h;
  return rec;
}

inline BiarcRecord make_record(const HermiteData<double>& h,
                               const Result<Biarc<double>>& r) {
  BiarcRecord rec;
  rec.input = h;
  rec.outcome = r.kind;
  if (r.ok()) {
    rec.record_kind = RecordKind::Solved;
    const Biarc<double>& b = r.value;
    rec.solve_kind = b.solve_kind;
    rec.residual_norm = b.residual_norm;
    rec.ell0 = b.arc0.length;
    rec.kappa0 = b.arc0.curvature;
    rec.ell1 = b.arc1.length;
    rec.kappa1 = b.arc1.curvature;
    rec.x_joint = b.x_joint;
    rec.y_joint = b.y_joint;
    rec.theta_joint = b.theta_joint;
    rec.total_length = b.total_length;
  } else {
    rec.record_kind = RecordKind::Error;
  }
  return rec;
}

// Rebuilds the evaluable biarc from a solved record. The joint pose and
// segment data are stored, so no re-solve happens here.
inline std::optional<Biarc<double>> biarc_from_record(
    const BiarcRecord& rec) {
  if (rec.record_kind != RecordKind::Solved) return std::nullopt;
  Biarc<double> b;
  b.arc0 = {rec.input.x0, rec.input.y0,
            normalize_angle(rec.input.theta0_world), rec.kappa0, rec.ell0};
  b.arc1 = {rec.x_joint, rec.y_joint, rec.theta_joint, rec.kappa1, rec.ell1};
  b.x_joint = rec.x_joint;
  b.y_joint = rec.y_joint;
  b.theta_joint = rec.theta_joint;
  b.ell_star = rec.ell0;
  b.total_length = rec.total_length;
  b.solve_kind = rec.solve_kind;
  b.residual_norm = rec.residual_norm;
  return b;
}

inline std::string to_line(const BiarcRecord& rec) {
  std::string out(rec.record_kind == RecordKind::Input ? "hermite" : "biarc");
  const auto field = [&out](std::string_view key, double v) {
    out += ' ';
    out += key;
    out += '=';
    out += format_double(v);
  };
  field("x0", rec.input.x0);
  field("y0", rec.input.y0);
  field("theta0", rec.input.theta0_world);
  field("x1", rec.input.x1);
  field("y1", rec.input.y1);
  field("theta1", rec.input.theta1_world);
  if (rec.record_kind == RecordKind::Input) return out;
  out += " outcome=";
  out += outcome_name(rec.outcome);
  if (rec.record_kind == RecordKind::Error) return out;
  out += " solve=";
  out += solve_kind_name(rec.solve_kind);
  field("residual", rec.residual_norm);
  field("l0", rec.ell0);
  field("k0", rec.kappa0);
  field("l1", rec.ell1);
  field("k1", rec.kappa1);
  field("xj", rec.x_joint);
  field("yj", rec.y_joint);
  field("thetaj", rec.theta_joint);
  field("length", rec.total_length);
  return out;
}

struct RecordParseResult {
  bool ok = false;
  BiarcRecord record;
  std::string error;
};

namespace detail {

// Splits "k=v k=v ..." into an ordered key list; rejects duplicates and
// malformed pairs.
inline bool split_fields(std::string_view body,
                         std::map<std::string_view, std::string_view>& kv,
                         std::string& error) {
  while (!body.empty()) {
    const std::size_t sp = body.find(' ');
    const std::string_view tok =
        sp == std::string_view::npos ? body : body.substr(0, sp);
    body = sp == std::string_view::npos ? std::string_view{}
                                        : body.substr(sp + 1);
    if (tok.empty()) {
      error = "empty field";
      return false;
    }
    const std::size_t eq = tok.find('=');
    if (eq == 0 || eq == std::string_view::npos) {
      error = "expected key=value, got '" + std::string(tok) + "'";
      return false;
    }
    const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (val.empty()) {
      error = "empty value for '" + std::string(key) + "'";
      return false;
    }
    if (!kv.emplace(key, val).second) {
      error = "duplicate key '" + std::string(key) + "'";
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline RecordParseResult parse_record_line(std::string_view line) {
  RecordParseResult res;
  const std::size_t sp = line.find(' ');
  const std::string_view tag = line.substr(0, sp);
  if (tag != "hermite" && tag != "biarc") {
    res.error = "unknown record tag '" + std::string(tag) + "'";
    return res;
  }
  std::map<std::string_view, std::string_view> kv;
  if (!detail::split_fields(
          sp == std::string_view::npos ? std::string_view{}
                                       : line.substr(sp + 1),
          kv, res.error))
    return res;

  const auto take_double = [&kv, &res](std::string_view key,
                                       double& slot) -> bool {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      res.error = "missing field '" + std::string(key) + "'";
      return false;
    }
    const auto v = parse_double(it->second);
    if (!v) {
      res.error = "bad number for '" + std::string(key) + "': '" +
                  std::string(it->second) + "'";
      return false;
    }
    slot = *v;
    kv.erase(it);
    return true;
  };

  BiarcRecord& rec = res.record;
  if (!take_double("x0", rec.input.x0) || !take_double("y0", rec.input.y0) ||
      !take_double("theta0", rec.input.theta0_world) ||
      !take_double("x1", rec.input.x1) || !take_double("y1", rec.input.y1) ||
      !take_double("theta1", rec.input.theta1_world))
    return res;

  if (tag == "hermite") {
    rec.record_kind = RecordKind::Input;
  } else {
    const auto oit = kv.find("outcome");
    if (oit == kv.end()) {
      res.error = "missing field 'outcome'";
      return res;
    }
    const auto oc = outcome_from_name(oit->second);
    if (!oc) {
      res.error = "bad outcome '" + std::string(oit->second) + "'";
      return res;
    }
    rec.outcome = *oc;
    kv.erase(oit);
    if (rec.outcome != OutcomeKind::Ok) {
      rec.record_kind = RecordKind::Error;
    } else {
      rec.record_kind = RecordKind::Solved;
      const auto sit = kv.find("solve");
      if (sit == kv.end()) {
        res.error = "missing field 'solve'";
        return res;
      }
      const auto sk = solve_kind_from_name(sit->second);
      if (!sk) {
        res.error = "bad solve kind '" + std::string(sit->second) + "'";
        return res;
      }
      rec.solve_kind = *sk;
      kv.erase(sit);
      if (!take_double("residual", rec.residual_norm) ||
          !take_double("l0", rec.ell0) || !take_double("k0", rec.kappa0) ||
          !take_double("l1", rec.ell1) || !take_double("k1", rec.kappa1) ||
          !take_double("xj", rec.x_joint) ||
          !take_double("yj", rec.y_joint) ||
          !take_double("thetaj", rec.theta_joint) ||
          !take_double("length", rec.total_length))
        return res;
    }
  }
  if (!kv.empty()) {
    res.error = "unexpected field '" + std::string(kv.begin()->first) + "'";
    return res;
  }
  res.ok = true;
  return res;
}

inline nlohmann::ordered_json to_json(const BiarcRecord& rec) {
  nlohmann::ordered_json j;
  j["x0"] = rec.input.x0;
  j["y0"] = rec.input.y0;
  j["theta0"] = rec.input.theta0_world;
  j["x1"] = rec.input.x1;
  j["y1"] = rec.input.y1;
  j["theta1"] = rec.input.theta1_world;
  if (rec.record_kind == RecordKind::Input) return j;
  j["outcome"] = outcome_name(rec.outcome);
  if (rec.record_kind == RecordKind::Error) return j;
  j["solve"] = solve_kind_name(rec.solve_kind);
  j["residual"] = rec.residual_norm;
  j["l0"] = rec.ell0;
  j["k0"] = rec.kappa0;
  j["l1"] = rec.ell1;
  j["k1"] = rec.kappa1;
  j["xj"] = rec.x_joint;
  j["yj"] = rec.y_joint;
  j["thetaj"] = rec.theta_joint;
  j["length"] = rec.total_length;
  return j;
}

// Sample and sweep output records; serialize-only, consumers are plotting
// and diff tooling.
inline std::string sample_line(int index, double ell,
                               const PointPose<double>& p) {
  std::string out = "sample i=";
  out += std::to_string(index);
  const auto field = [&out](std::string_view key, double v) {
    out += ' ';
    out += key;
    out += '=';
    out += format_double(v);
  };
  field("l", ell);
  field("x", p.x);
  field("y", p.y);
  field("theta", p.theta);
  field("kappa", p.kappa);
  return out;
}

inline std::string sweep_point_line(const SweepPoint& pt) {
  std::string out = "point";
  const auto field = [&out](std::string_view key, double v) {
    out += ' ';
    out += key;
    out += '=';
    out += format_double(v);
  };
  field("theta0", pt.theta0);
  field("theta1", pt.theta1);
  out += " outcome=";
  out += outcome_name(pt.outcome);
  if (pt.outcome != OutcomeKind::Ok) return out;
  field("l0", pt.ell0);
  field("k0", pt.kappa0);
  field("l1", pt.ell1);
  field("k1", pt.kappa1);
  field("xj", pt.x_joint);
  field("yj", pt.y_joint);
  field("thetaj", pt.theta_joint);
  return out;
}

inline std::string sweep_stats_line(const SweepStats& st) {
  std::string out = "stats";
  const auto count = [&out](std::string_view key, std::size_t v) {
    out += ' ';
    out += key;
    out += '=';
    out += std::to_string(v);
  };
  const auto field = [&out](std::string_view key, double v) {
    out += ' ';
    out += key;
    out += '=';
    out += format_double(v);
  };
  count("ok", st.count_ok);
  count("no_solution", st.count_no_solution);
  count("non_positive_length", st.count_non_positive_length);
  count("degenerate_chord", st.count_degenerate_chord);
  field("jump_l0", st.max_jump_ell0);
  field("jump_k0", st.max_jump_kappa0);
  field("jump_l1", st.max_jump_ell1);
  field("jump_k1", st.max_jump_kappa1);
  field("jump_joint", st.max_jump_joint);
  field("jump_thetaj", st.max_jump_theta_joint);
  return out;
}

}  // namespace biarc
