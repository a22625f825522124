#include "gwspin/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace gwspin {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kEigClamp = 1e-10;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double frobenius(const std::vector<cd>& m) {
  double s = 0.0;
  for (const cd& v : m) s += std::norm(v);
  return std::sqrt(s);
}

// Cyclic Jacobi on a real symmetric matrix; destroys its argument.
std::vector<double> jacobi_symmetric(std::vector<double>& a, std::size_t n) {
  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    }
    return std::sqrt(2.0 * s);
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i * n + j]));
  }
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  const double target = 1e-15 * scale * static_cast<double>(n);
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_norm() <= target) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace

DensityOperator::DensityOperator(std::vector<cd> data, std::vector<std::string> qubits)
    : data_(std::move(data)), qubits_(std::move(qubits)) {
  dim_ = std::size_t{1} << qubits_.size();
  if (qubits_.empty() || qubits_.size() > 10) {
    throw std::invalid_argument("density operator supports 1..10 qubits");
  }
  if (data_.size() != dim_ * dim_) {
    throw std::invalid_argument("density operator data size does not match 2^N x 2^N");
  }
  double herm_err = 0.0;
  cd trace = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    trace += data_[r * dim_ + r];
    for (std::size_t c = r; c < dim_; ++c) {
      herm_err = std::max(herm_err,
                          std::abs(data_[r * dim_ + c] - std::conj(data_[c * dim_ + r])));
    }
  }
  if (herm_err > kHermTol) {
    throw std::invalid_argument("density operator is not Hermitian (deviation " +
                                std::to_string(herm_err) + ")");
  }
  if (std::abs(trace - cd(1.0)) > kHermTol) {
    throw std::invalid_argument("density operator trace differs from 1");
  }
}

DensityOperator DensityOperator::pure(const std::vector<cd>& amplitudes,
                                      std::vector<std::string> qubits) {
  const std::size_t d = amplitudes.size();
  if (!is_power_of_two(d)) {
    throw std::invalid_argument("pure-state amplitude vector must have length 2^N");
  }
  std::vector<cd> m(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = amplitudes[r] * std::conj(amplitudes[c]);
  }
  return DensityOperator(std::move(m), std::move(qubits));
}

std::size_t DensityOperator::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    if (qubits_[i] == label) return i;
  }
  throw std::invalid_argument("no qubit labeled '" + label + "' in state");
}

nlohmann::json DensityOperator::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["qubits"] = qubits_;
  std::vector<double> re(dim_ * dim_), im(dim_ * dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    re[i] = data_[i].real();
    im[i] = data_[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

DensityOperator DensityOperator::from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  auto qubits = j.at("qubits").get<std::vector<std::string>>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != dim * dim || im.size() != dim * dim) {
    throw std::invalid_argument("density operator JSON arrays must have dim^2 entries");
  }
  if ((std::size_t{1} << qubits.size()) != dim) {
    throw std::invalid_argument("density operator JSON dim does not match qubit count");
  }
  std::vector<cd> data(dim * dim);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = cd(re[i], im[i]);
  return DensityOperator(std::move(data), std::move(qubits));
}

Mat2 channel_table(const SpinChannel& ch, int j, int k) {
  if (j < 0 || j > 1 || k < 0 || k > 1) {
    throw std::invalid_argument("basis operator indices must be 0 or 1");
  }
  const double c = ch.factor().cbar();
  const double s = ch.factor().sbar();
  if (j == 0 && k == 0) return {{{0.5 * (1.0 + c), 0.5 * s}, {0.5 * s, 0.5 * (1.0 - c)}}};
  if (j == 0 && k == 1)
    return {{{-0.5 * s, 0.5 * (1.0 + c)}, {0.5 * (-1.0 + c), 0.5 * s}}};
  if (j == 1 && k == 0)
    return {{{-0.5 * s, 0.5 * (-1.0 + c)}, {0.5 * (1.0 + c), 0.5 * s}}};
  return {{{0.5 * (1.0 - c), -0.5 * s}, {-0.5 * s, 0.5 * (1.0 + c)}}};
}

DensityOperator apply_channel(const SpinChannel& ch, const DensityOperator& rho,
                              const std::string& target) {
  const std::size_t qi = rho.index_of(target);
  const std::size_t dim = rho.dim();
  const std::size_t bit = std::size_t{1} << (rho.num_qubits() - 1 - qi);

  Mat2 table[2][2];
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) table[j][k] = channel_table(ch, j, k);
  }

  std::vector<cd> out(dim * dim, cd(0.0));
  for (std::size_t r = 0; r < dim; ++r) {
    const int j = (r & bit) ? 1 : 0;
    const std::size_t r_base = r & ~bit;
    for (std::size_t c = 0; c < dim; ++c) {
      const cd v = rho.at(r, c);
      if (v == cd(0.0)) continue;
      const int k = (c & bit) ? 1 : 0;
      const std::size_t c_base = c & ~bit;
      const Mat2& img = table[j][k];
      for (int jp = 0; jp < 2; ++jp) {
        for (int kp = 0; kp < 2; ++kp) {
          const double coeff = img[jp][kp];
          if (coeff == 0.0) continue;
          const std::size_t rr = r_base | (jp ? bit : 0);
          const std::size_t cc = c_base | (kp ? bit : 0);
          out[rr * dim + cc] += coeff * v;
        }
      }
    }
  }
  return DensityOperator(std::move(out), rho.qubits());
}

DensityOperator bell_state(int i) {
  // Projector entries are exactly +-1/2 (or +-i/2), so build them directly
  // rather than squaring 1/sqrt(2).
  std::array<cd, 4> amps{};  // amplitudes up to the overall 1/sqrt(2)
  switch (i) {
    case 0:
      amps[0] = 1.0;
      amps[3] = 1.0;
      break;
    case 1:
      amps[1] = 1.0;
      amps[2] = 1.0;
      break;
    case 2:
      amps[1] = cd(0.0, -1.0);  // (sigma^y x I)|Psi^0>
      amps[2] = cd(0.0, 1.0);
      break;
    case 3:
      amps[0] = 1.0;
      amps[3] = -1.0;
      break;
    default:
      throw std::invalid_argument("Bell state index must be in 0..3");
  }
  std::vector<cd> m(16);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r * 4 + c] = 0.5 * amps[r] * std::conj(amps[c]);
  }
  return DensityOperator(std::move(m), {"A", "B"});
}

namespace {

std::vector<std::string> ghz_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 1; i <= n; ++i) labels.push_back("A" + std::to_string(i));
  return labels;
}

void check_ghz_n(int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("GHZ particle count must be in 1..10");
  }
}

// (1/2) sum_{jk} M[j][k]^{(x) n} for four 2x2 blocks; entries of the n-fold
// tensor power factor over the bits of the row/column indices.
std::vector<cd> basis_sum_tensor_power(const Mat2 m[2][2], int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cd> out(dim * dim, cd(0.0));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          double prod = 0.5;
          for (int b = n - 1; b >= 0 && prod != 0.0; --b) {
            prod *= m[j][k][(r >> b) & 1][(c >> b) & 1];
          }
          out[r * dim + c] += prod;
        }
      }
    }
  }
  return out;
}

}  // namespace

DensityOperator ghz_state(int n) {
  check_ghz_n(n);
  Mat2 basis[2][2];
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      basis[j][k] = Mat2{};
      basis[j][k][j][k] = 1.0;
    }
  }
  return DensityOperator(basis_sum_tensor_power(basis, n), ghz_labels(n));
}

DensityOperator evolve_ghz(int n, const SpinChannel& ch) {
  check_ghz_n(n);
  Mat2 images[2][2];
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) images[j][k] = channel_table(ch, j, k);
  }
  return DensityOperator(basis_sum_tensor_power(images, n), ghz_labels(n));
}

std::vector<double> herm_eigenvalues(const HermitianMatrix& m) {
  const std::size_t n = m.dim;
  if (n == 0 || m.data.size() != n * n) {
    throw std::invalid_argument("eigensolver input has inconsistent dimensions");
  }
  const double scale = std::max(1.0, frobenius(m.data));
  double herm_err = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      herm_err = std::max(herm_err, std::abs(m.data[r * n + c] - std::conj(m.data[c * n + r])));
    }
  }
  if (herm_err > 1e-10 * scale) {
    throw std::invalid_argument("eigensolver input is not Hermitian");
  }

  // Real-symmetric embedding [[Re, -Im], [Im, Re]]; its spectrum is the
  // Hermitian spectrum doubled.
  const std::size_t nn = 2 * n;
  std::vector<double> b(nn * nn, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const cd v = m.data[r * n + c];
      b[r * nn + c] = v.real();
      b[(r + n) * nn + (c + n)] = v.real();
      b[r * nn + (c + n)] = -v.imag();
      b[(r + n) * nn + c] = v.imag();
    }
  }
  const std::vector<double> doubled = jacobi_symmetric(b, nn);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return eig;
}

std::vector<double> herm_eigenvalues(const DensityOperator& rho) {
  return herm_eigenvalues(HermitianMatrix{rho.dim(), rho.data()});
}

double von_neumann_entropy(const DensityOperator& rho) {
  const auto eig = herm_eigenvalues(rho);
  double bits = 0.0;
  constexpr double kLn2 = 0.69314718055994530942;
  for (double e : eig) {
    if (e < -kEigClamp) {
      throw std::domain_error("density operator has eigenvalue " + std::to_string(e) +
                              " below the positivity tolerance");
    }
    if (e <= 0.0) continue;
    const double p = std::min(e, 1.0);
    bits -= p * std::log(p) / kLn2;
  }
  return std::max(0.0, bits);
}

HermitianMatrix partial_transpose(const DensityOperator& rho, const std::vector<int>& qubits) {
  if (qubits.empty() || qubits.size() >= rho.num_qubits()) {
    throw std::invalid_argument("partial transpose needs a nonempty proper qubit subset");
  }
  std::size_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || static_cast<std::size_t>(q) >= rho.num_qubits()) {
      throw std::invalid_argument("partial transpose qubit index out of range");
    }
    const std::size_t bit = std::size_t{1} << (rho.num_qubits() - 1 - q);
    if (mask & bit) {
      throw std::invalid_argument("partial transpose qubit subset has duplicates");
    }
    mask |= bit;
  }
  const std::size_t dim = rho.dim();
  HermitianMatrix out;
  out.dim = dim;
  out.data.assign(dim * dim, cd(0.0));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      // Swap the masked bits between row and column indices.
      const std::size_t rr = (r & ~mask) | (c & mask);
      const std::size_t cc = (c & ~mask) | (r & mask);
      out.data[rr * dim + cc] = rho.at(r, c);
    }
  }
  return out;
}

double negativity(const DensityOperator& rho, const std::vector<int>& partition) {
  const auto eig = herm_eigenvalues(partial_transpose(rho, partition));
  double neg_sum = 0.0;
  for (double e : eig) {
    if (e < 0.0) neg_sum += e;
  }
  return std::max(0.0, -2.0 * neg_sum);
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& traced) {
  if (traced.empty() || traced.size() >= rho.num_qubits()) {
    throw std::invalid_argument("partial trace needs a nonempty proper qubit subset");
  }
  const std::size_t n = rho.num_qubits();
  std::vector<bool> is_traced(n, false);
  for (int q : traced) {
    if (q < 0 || static_cast<std::size_t>(q) >= n || is_traced[q]) {
      throw std::invalid_argument("partial trace qubit subset is invalid");
    }
    is_traced[q] = true;
  }
  std::vector<std::size_t> kept;
  std::vector<std::string> kept_labels;
  for (std::size_t q = 0; q < n; ++q) {
    if (!is_traced[q]) {
      kept.push_back(q);
      kept_labels.push_back(rho.qubits()[q]);
    }
  }
  const std::size_t kd = std::size_t{1} << kept.size();
  const std::size_t td = std::size_t{1} << traced.size();

  auto expand = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t idx = 0;
    std::size_t ki = 0, ti = 0;
    for (std::size_t q = 0; q < n; ++q) {
      idx <<= 1;
      if (is_traced[q]) {
        idx |= (traced_bits >> (traced.size() - 1 - ti)) & 1;
        ++ti;
      } else {
        idx |= (kept_bits >> (kept.size() - 1 - ki)) & 1;
        ++ki;
      }
    }
    return idx;
  };

  std::vector<cd> out(kd * kd, cd(0.0));
  for (std::size_t r = 0; r < kd; ++r) {
    for (std::size_t c = 0; c < kd; ++c) {
      cd s = 0.0;
      for (std::size_t t = 0; t < td; ++t) s += rho.at(expand(r, t), expand(c, t));
      out[r * kd + c] = s;
    }
  }
  return DensityOperator(std::move(out), std::move(kept_labels));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  const std::size_t d = da * db;
  std::vector<cd> out(d * d);
  for (std::size_t ra = 0; ra < da; ++ra) {
    for (std::size_t ca = 0; ca < da; ++ca) {
      const cd va = a.at(ra, ca);
      for (std::size_t rb = 0; rb < db; ++rb) {
        for (std::size_t cb = 0; cb < db; ++cb) {
          out[(ra * db + rb) * d + (ca * db + cb)] = va * b.at(rb, cb);
        }
      }
    }
  }
  std::vector<std::string> labels = a.qubits();
  labels.insert(labels.end(), b.qubits().begin(), b.qubits().end());
  return DensityOperator(std::move(out), std::move(labels));
}

TwoParticleAnalytic analytic_two_particle(const DecoherenceFactor& d) {
  TwoParticleAnalytic out;
  out.negativity_deficit = deficit_sq(d);
  out.negativity = 1.0 - out.negativity_deficit;
  out.entropy_bits = binary_entropy_bits(0.5 * out.negativity_deficit);
  return out;
}

}  // namespace gwspin
