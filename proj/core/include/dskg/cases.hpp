#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dskg {

enum class CaseId { G11, G12, G13a, G14, G21, G22, G23, G31, G32, G33a, G34, G35, G41 };

inline constexpr std::array<CaseId, 13> kAllCases = {
    CaseId::G11, CaseId::G12, CaseId::G13a, CaseId::G14, CaseId::G21, CaseId::G22, CaseId::G23,
    CaseId::G31, CaseId::G32, CaseId::G33a, CaseId::G34, CaseId::G35, CaseId::G41};

// The five cases with a nontrivial electromagnetic field that pass the
// integrability test.
inline constexpr std::array<CaseId, 5> kIntegrableCases = {CaseId::G31, CaseId::G32, CaseId::G33a,
                                                            CaseId::G34, CaseId::G35};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Canonical ids "G11" ... and CLI spellings "g1_1", "g1_3a" are both accepted.
std::string case_name(CaseId id);
std::string case_cli_name(CaseId id);
std::optional<CaseId> parse_case(std::string_view s);

int subalgebra_dim(CaseId id);
// Number of q coordinates (orbit dimension r).
int orbit_dim(CaseId id);
bool has_parameter(CaseId id);
bool is_integrable_case(CaseId id);

// Throws DomainError when a parameterized family gets no a or a <= 0. A value
// supplied for a case without a parameter is ignored.
double checked_parameter(CaseId id, std::optional<double> a);

}  // namespace dskg
