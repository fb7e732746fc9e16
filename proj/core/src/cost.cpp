#include "tilelab/cost.hpp"

#include <stdexcept>

namespace tilelab {

std::string_view primitive_name(Primitive p) noexcept {
  switch (p) {
    case Primitive::Rho: return "rho";
    case Primitive::Tau: return "tau";
    case Primitive::Lambda: return "lambda";
    case Primitive::Sigma: return "sigma";
    case Primitive::Phi: return "phi";
    case Primitive::Compare: return "compare";
  }
  return "?";
}

std::map<std::string, std::uint64_t> CostLedger::per_primitive() const {
  std::map<std::string, std::uint64_t> out;
  for (std::size_t i = 0; i < kPrimitiveCount; ++i) {
    out.emplace(std::string(primitive_name(static_cast<Primitive>(i))), counts_[i]);
  }
  return out;
}

CostLedger& CostLedger::operator+=(const CostLedger& other) noexcept {
  for (std::size_t i = 0; i < kPrimitiveCount; ++i) counts_[i] += other.counts_[i];
  decisions_ += other.decisions_;
  return *this;
}

namespace {

// Case statement over the four labels: arms are tried in label order, so
// selecting label k costs k decisions.
std::uint64_t label_dispatch(Move m) noexcept { return static_cast<std::uint64_t>(move_label(m)); }

void check_ceiling(std::uint64_t value, std::uint64_t ceiling, const char* what) {
  if (value > ceiling) throw std::logic_error(std::string("decision ceiling exceeded for ") + what);
}

}  // namespace

TileGrid instrumented_apply(const TileGrid& grid, Move m, CostLedger& ledger, MoveTally* tally) {
  MoveTally local;

  // Guard: the blank test, then the neighbour tests in label order up to m.
  std::uint64_t guard = 1 + label_dispatch(m);
  const bool legal = grid.can_move(m);

  if (!legal) {
    local.phi = guard;
    ledger.add(Primitive::Phi, guard);
    check_ceiling(local.phi, 5, "phi guard");
    if (tally) *tally = local;
    return grid;
  }

  // Blank cell takes the rho branch of the update.
  local.rho = label_dispatch(m);
  // The swapped neighbour takes the tau branch: resolve lambda, then test it.
  const std::uint64_t lambda = label_dispatch(m);
  local.tau = lambda + 1;
  local.sigma = 1 + local.rho + local.tau;
  local.phi = guard + local.sigma;

  ledger.add(Primitive::Phi, guard);
  ledger.add(Primitive::Sigma, 1);
  ledger.add(Primitive::Rho, local.rho);
  ledger.add(Primitive::Lambda, lambda);
  ledger.add(Primitive::Tau, 1);

  check_ceiling(local.rho, kRhoCeiling, "rho");
  check_ceiling(local.tau, kTauCeiling, "tau");
  check_ceiling(local.sigma, kSigmaCeiling, "sigma");
  check_ceiling(guard, 5, "phi guard");
  check_ceiling(local.phi, kPhiCeiling, "phi");

  if (tally) *tally = local;
  return *grid.moved(m);
}

bool instrumented_equal(const TileGrid& a, const TileGrid& b, CostLedger& ledger) {
  bool equal = a.n() == b.n();
  if (equal) {
    const auto lhs = a.raw();
    const auto rhs = b.raw();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      ledger.add(Primitive::Compare);
      if (lhs[i] != rhs[i]) {
        equal = false;
        break;
      }
    }
  }
  ledger.add(Primitive::Compare);  // result arm
  return equal;
}

bool instrumented_verify(const TileGrid& grid, const MoveSeq& seq, CostLedger& ledger) {
  TileGrid current = grid;
  for (Move m : seq) current = instrumented_apply(current, m, ledger);
  return instrumented_equal(current, TileGrid::goal(grid.n()), ledger);
}

Budget budget(BudgetKind kind, int n, std::uint64_t k) {
  if (n < 1) throw DomainError("budget requires n >= 1");
  Budget b{kind, n, k, 0};
  const BigInt area = BigInt(n) * n;
  if (kind == BudgetKind::Verify) {
    b.ceiling = area + BigInt(27) * k + 1;
  } else {
    if (k > 100000) throw DomainError("search budget exponent too large");
    b.ceiling = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(k)) * (area + 2) + BigInt(27) * k;
  }
  return b;
}

BigInt search_ceiling_summed(int n, std::uint64_t k) {
  if (k > 100000) throw DomainError("search budget exponent too large");
  const BigInt area = BigInt(n) * n;
  BigInt total = 0;
  BigInt candidates = 1;
  for (std::uint64_t j = 0; j <= k; ++j) {
    total += candidates * (area + 2 + BigInt(27) * j);
    candidates *= 4;
  }
  return total;
}

namespace {

bool is_unicode_whitespace(char32_t cp) noexcept {
  if (cp >= 0x09 && cp <= 0x0D) return true;
  switch (cp) {
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      break;
  }
  return cp >= 0x2000 && cp <= 0x200A;
}

}  // namespace

std::size_t program_length(std::string_view text) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t width = 1;
    char32_t cp = lead;
    if (lead >= 0xF0) {
      width = 4;
      cp = lead & 0x07;
    } else if (lead >= 0xE0) {
      width = 3;
      cp = lead & 0x0F;
    } else if (lead >= 0xC0) {
      width = 2;
      cp = lead & 0x1F;
    }
    // Malformed tails count as one code point each.
    if (i + width > text.size()) width = 1;
    for (std::size_t j = 1; j < width; ++j) {
      const auto cont = static_cast<unsigned char>(text[i + j]);
      if ((cont & 0xC0) != 0x80) {
        width = 1;
        cp = lead;
        break;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (!is_unicode_whitespace(cp)) ++count;
    i += width;
  }
  return count;
}

bool polytime_witness(const BigInt& decisions, std::uint64_t length, int n, std::uint64_t k) {
  if (length < 1) throw DomainError("program length must be at least 1");
  if (decisions <= 0) return true;
  const BigInt exponent = BigInt(n) * n + BigInt(27) * k + 1;
  // base >= 2, so base^e >= 2^e already dominates once e exceeds the bit length.
  const auto bits = boost::multiprecision::msb(decisions) + 1;
  if (exponent > bits) return true;
  const BigInt base = BigInt(length) * length + 1;
  return decisions <= boost::multiprecision::pow(base, exponent.convert_to<unsigned>());
}

}  // namespace tilelab
