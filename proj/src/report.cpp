#include "dircheeger/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace dircheeger {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

Json steps(const Steps& t) { return t ? Json(*t) : Json("inf"); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Cut& cut) {
  return {{"value", number(cut.value)}, {"set", cut.vertices}, {"measure", to_string(cut.mode)}};
}

Json to_json(const SpectralBracket& b, bool witnesses) {
  Json j = {{"lambda_lo", number(b.lambda_lo)},
            {"lambda_hi", number(b.lambda_hi)},
            {"gap", number(b.lambda_hi - b.lambda_lo)},
            {"fw_gap", number(b.fw_gap)},
            {"iterations", b.iterations},
            {"converged", b.converged},
            {"k", b.k},
            {"components", b.components}};
  if (witnesses) {
    Json a = Json::array();
    for (double x : b.witness_a.values) a.push_back(number(x));
    j["witness_a"] = a;
    j["witness_f"] = to_json(b.witness_f.f);
  }
  return j;
}

Json to_json(const CutResult& r) {
  const CutDiagnostics& d = r.diagnostics;
  return {{"cut", to_json(r.cut)},
          {"bracket", to_json(r.bracket)},
          {"diagnostics",
           {{"lambda_lo", number(d.lambda_lo)},
            {"lambda_hi", number(d.lambda_hi)},
            {"lambda_1", number(d.lambda_1)},
            {"eta", number(d.eta)},
            {"xi", number(d.xi)},
            {"alpha", number(d.alpha)},
            {"projection_dim", d.projection_dim},
            {"member", d.member},
            {"member_seed", d.member_seed},
            {"scc_bypass", d.scc_bypass},
            {"converged", d.converged},
            {"dual_bound", number(d.dual_bound)},
            {"chain_bound", number(d.chain_bound)}}}};
}

Json to_json(const MixingBounds& b) {
  return {{"pi_min", number(b.pi_min)},
          {"psi", number(b.psi)},
          {"psi_lower", number(b.psi_lower)},
          {"lambda_lo", number(b.lambda_lo)},
          {"lambda_upper", number(b.lambda_upper)}};
}

Json to_json(const FastestMixing& fm) {
  return {{"P", to_json(fm.p)},
          {"residual", number(fm.residual)},
          {"tau_lazy", steps(fm.tau)},
          {"bounds", to_json(fm.bounds)},
          {"bracket", to_json(fm.bracket)}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json envelope(const std::string& command, const std::string& input_digest, Json parameters, Json result,
              double seconds) {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"input_digest", input_digest},
          {"parameters", std::move(parameters)},
          {"result", std::move(result)},
          {"timing", {{"seconds", seconds}}},
          {"version", kVersion}};
}

std::string payload(const Json& envelope) {
  Json copy = envelope;
  copy.erase("timing");
  return copy.dump();
}

}  // namespace dircheeger
