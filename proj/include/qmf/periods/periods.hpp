#pragma once

#include "qmf/eigen/eigen.hpp"
#include "qmf/exactalg/quadforms.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qmf {

/// A character of Cl(K): chi(t) = zeta_m^{exps[t]} with m the group exponent.
struct ClassCharacter {
  std::vector<std::int64_t> exps;
  std::int64_t order = 1;
};

/// K = Q(sqrt(-D)) with discriminant -D and its class group as reduced forms.
struct IQField {
  std::int64_t D = 0;
  std::vector<BinaryForm> forms;           // forms[0] is the identity
  std::vector<std::vector<int>> table;     // composition
  std::vector<int> inverse;
  std::vector<std::int64_t> structure;     // invariant factors d1 | d2 | ...
  std::int64_t exponent = 1;
  std::vector<ClassCharacter> characters;  // characters[0] trivial

  std::size_t h() const { return forms.size(); }
  int index_of(const BinaryForm& f) const;
  /// Class of the prime ideal above a prime p | D.
  int ramified_class(std::int64_t p) const;
  bool one_class_per_genus() const { return exponent <= 2; }
};

/// Fundamental discriminants only; PreconditionError otherwise.
IQField iq_field(std::int64_t D);

/// True iff -D is non-split at every p | N.
bool embeds(std::int64_t D, std::int64_t n);

struct Embedding {
  std::int64_t D = 0;
  int orbit = 0;   // Pic(O)-orbit whose left order receives o_K
  int target = 0;  // least class of that orbit; iota_*(1)
  Vec4 beta;       // generator of o_K in O coordinates over den
  Int den = 1;
};

/// First embedding of o_K found by orbit index, then enumeration order.
Embedding embed(const IQField& k, const LevelData& data);

struct ClassMapTable {
  std::vector<int> map;  // form index -> class index
  int shift = 0;         // the embedding was moved by this class so that the twist is as small as possible
  int twist = -1;        // c with map(t^{-1}) = sigma_N(map(t c)) for all t; -1 when none exists
};

ClassMapTable ideal_class_map(const Embedding& e, const IQField& k, const LevelData& data);

/// Least c with map(t^{-1}) = sigma_N(map(t c)) for all t, or -1.
int class_map_twist(const std::vector<int>& map, const IQField& k, const LevelData& data);

/// Failures of the inverse/sigma_N identity, the 2-torsion fixed points, the sigma_d fixed points
/// when d | N and the sigma_p equivariance for p | gcd(D, N). Empty when all hold.
std::vector<std::string> check_class_map(const ClassMapTable& m, const IQField& k, const LevelData& data);

enum class Vanishing { Zero, Nonzero, Undecided };

struct PeriodConfig {
  int precision = 128;
  int max_precision = 4096;
};

struct PeriodValue {
  std::int64_t order = 1;               // values lie in Q(alpha)(zeta_order)
  std::vector<std::vector<Int>> exact;  // coefficient of alpha^l as a polynomial in zeta mod Phi_order
  bool decisive = false;                // exact data alone decides vanishing
  Rat re, im, radius;                   // at the largest real root alpha, when intervals ran
  int precision = 0;
  Vanishing status = Vanishing::Undecided;
  std::string method;
};

/// sum_t phi(iota_*(t)) chi^{-1}(t).
PeriodValue period(const Eigenform& phi, const IQField& k, const ClassMapTable& m, std::size_t chi,
                   const PeriodConfig& cfg = {});

/// sum over all characters equals h_K phi(iota_*(1)), checked exactly.
bool character_sum_identity(const Eigenform& phi, const IQField& k, const ClassMapTable& m);

enum class Verdict { ForcedZero, LNonzero, LZero, Undecided };
std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::Undecided;
  std::string reason;
  std::optional<PeriodValue> period;
};

VerdictReport nonvanishing_verdict(const Eigenform& phi, const IQField& k, const ClassMapTable& m, std::size_t chi,
                                   const PeriodConfig& cfg = {});

/// A character with nonvanishing twisted value when phi(iota_*(1)) != 0 (always exists).
std::optional<std::size_t> find_nonvanishing_character(const Eigenform& phi, const IQField& k,
                                                       const ClassMapTable& m, const PeriodConfig& cfg = {});

nlohmann::json to_json(const PeriodValue& v);
nlohmann::json to_json(const VerdictReport& r);

}  // namespace qmf
