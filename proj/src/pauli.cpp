#include "romkit/pauli.hpp"

#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace romkit {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument(fmt::format("qubit count {} out of range [1, {}]", n, kMaxQubits));
}

// Letter codes in canonical order: I=0, X=1, Y=2, Z=3.
inline int letter_code(bool xb, bool zb) {
  if (!xb && !zb) return 0;
  if (xb && !zb) return 1;
  if (xb && zb) return 2;
  return 3;
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

}  // namespace

bool PauliString::is_hermitian() const {
  return ((phase ^ std::popcount(x & z)) & 1) == 0;
}

PauliString pauli_from_index(int n, std::uint64_t index) {
  check_n(n);
  if (index >= (std::uint64_t{1} << (2 * n)))
    throw std::invalid_argument(fmt::format("pauli index {} out of range for n={}", index, n));
  PauliString p;
  p.n = n;
  int ys = 0;
  for (int b = 0; b < n; ++b) {
    int code = static_cast<int>((index >> (2 * b)) & 3u);
    // mask bit b belongs to qubit n-b; code 2 (Y) contributes one factor of i
    if (code == 1 || code == 2) p.x |= std::uint64_t{1} << b;
    if (code == 2 || code == 3) p.z |= std::uint64_t{1} << b;
    if (code == 2) ++ys;
  }
  p.phase = static_cast<std::uint8_t>(ys & 3);
  return p;
}

IndexedPauli pauli_index_signed(const PauliString& p) {
  if (!p.is_hermitian())
    throw std::invalid_argument("pauli_index_signed: operator is not Hermitian");
  std::uint64_t index = 0;
  for (int b = 0; b < p.n; ++b) {
    int code = letter_code((p.x >> b) & 1u, (p.z >> b) & 1u);
    index |= static_cast<std::uint64_t>(code) << (2 * b);
  }
  int canonical = std::popcount(p.x & p.z) & 3;
  int sign = ((p.phase - canonical) & 3) == 0 ? 1 : -1;
  return {index, sign};
}

std::string pauli_index_to_string(int n, std::uint64_t index) {
  check_n(n);
  if (index >= (std::uint64_t{1} << (2 * n)))
    throw std::invalid_argument(fmt::format("pauli index {} out of range for n={}", index, n));
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int b = 0; b < n; ++b)
    s[static_cast<std::size_t>(n - 1 - b)] = kLetters[(index >> (2 * b)) & 3u];
  return s;
}

PauliString pauli_from_string(std::string_view s) {
  std::uint8_t prefix = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    if (s[0] == '-') prefix = 2;
    s.remove_prefix(1);
  }
  if (!s.empty() && s[0] == 'i') {
    prefix = static_cast<std::uint8_t>((prefix + 1) & 3);
    s.remove_prefix(1);
  }
  if (s.empty() || s.size() > static_cast<std::size_t>(kMaxQubits))
    throw std::invalid_argument("pauli_from_string: bad length");
  PauliString p;
  p.n = static_cast<int>(s.size());
  int ys = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int b = p.n - 1 - static_cast<int>(i);  // s[0] is qubit 1
    switch (s[i]) {
      case 'I': break;
      case 'X': p.x |= std::uint64_t{1} << b; break;
      case 'Y': p.x |= std::uint64_t{1} << b; p.z |= std::uint64_t{1} << b; ++ys; break;
      case 'Z': p.z |= std::uint64_t{1} << b; break;
      default:
        throw std::invalid_argument(fmt::format("pauli_from_string: bad letter '{}'", s[i]));
    }
  }
  p.phase = static_cast<std::uint8_t>((prefix + ys) & 3);
  return p;
}

std::string to_string(const PauliString& p) {
  int canonical = std::popcount(p.x & p.z) & 3;
  int rel = (p.phase - canonical) & 3;
  static const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string s = kPrefix[rel];
  for (int b = p.n - 1; b >= 0; --b)
    s += kLetters[letter_code((p.x >> b) & 1u, (p.z >> b) & 1u)];
  return s;
}

PauliString pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n)
    throw std::invalid_argument(
        fmt::format("pauli_multiply: size mismatch ({} vs {})", a.n, b.n));
  PauliString p;
  p.n = a.n;
  p.x = a.x ^ b.x;
  p.z = a.z ^ b.z;
  // Moving b's X block across a's Z block contributes (-1) per overlap.
  p.phase = static_cast<std::uint8_t>((a.phase + b.phase + 2 * std::popcount(a.z & b.x)) & 3);
  return p;
}

PauliString pauli_tensor(const PauliString& a, const PauliString& b) {
  if (a.n + b.n > kMaxQubits)
    throw std::invalid_argument("pauli_tensor: combined size too large");
  PauliString p;
  p.n = a.n + b.n;
  p.x = (a.x << b.n) | b.x;
  p.z = (a.z << b.n) | b.z;
  p.phase = static_cast<std::uint8_t>((a.phase + b.phase) & 3);
  return p;
}

bool pauli_commutes(const PauliString& a, const PauliString& b) {
  return ((std::popcount(a.x & b.z) ^ std::popcount(a.z & b.x)) & 1) == 0;
}

}  // namespace romkit
