#include "dskg/cases.hpp"

#include <algorithm>
#include <cctype>

namespace dskg {

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::G11: return "G11";
    case CaseId::G12: return "G12";
    case CaseId::G13a: return "G13a";
    case CaseId::G14: return "G14";
    case CaseId::G21: return "G21";
    case CaseId::G22: return "G22";
    case CaseId::G23: return "G23";
    case CaseId::G31: return "G31";
    case CaseId::G32: return "G32";
    case CaseId::G33a: return "G33a";
    case CaseId::G34: return "G34";
    case CaseId::G35: return "G35";
    case CaseId::G41: return "G41";
  }
  return "?";
}

std::string case_cli_name(CaseId id) {
  std::string n = case_name(id);
  std::string r = "g";
  r += n[1];
  r += '_';
  r += n.substr(2);
  return r;
}

std::optional<CaseId> parse_case(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != '_') t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (CaseId id : kAllCases) {
    std::string n = case_name(id);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == n) return id;
    // allow "g13" / "g33" without the family suffix
    if (has_parameter(id) && t + "a" == n) return id;
  }
  return std::nullopt;
}

int subalgebra_dim(CaseId id) { return case_name(id)[1] - '0'; }

int orbit_dim(CaseId id) {
  switch (id) {
    case CaseId::G11:
    case CaseId::G12:
    case CaseId::G13a:
    case CaseId::G14: return 1;
    case CaseId::G21:
    case CaseId::G22:
    case CaseId::G23:
    case CaseId::G32:
    case CaseId::G34:
    case CaseId::G35: return 2;
    case CaseId::G31:
    case CaseId::G33a:
    case CaseId::G41: return 3;
  }
  return 0;
}

bool has_parameter(CaseId id) { return id == CaseId::G13a || id == CaseId::G33a; }

bool is_integrable_case(CaseId id) {
  return std::find(kIntegrableCases.begin(), kIntegrableCases.end(), id) != kIntegrableCases.end();
}

double checked_parameter(CaseId id, std::optional<double> a) {
  if (!has_parameter(id)) return 0.0;
  if (!a) throw DomainError(case_name(id) + " requires the family parameter a");
  if (!(*a > 0.0)) throw DomainError(case_name(id) + " requires a > 0");
  return *a;
}

}  // namespace dskg
