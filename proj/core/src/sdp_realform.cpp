#include "bellcert/sdp_realform.hpp"

#include <cmath>

namespace bellcert::sdp {

RMat embed_hermitian(const CMat& h) {
  const int n = static_cast<int>(h.rows());
  RMat out(2 * n, 2 * n);
  const RMat re = h.real();
  const RMat im = h.imag();
  out.topLeftCorner(n, n) = re;
  out.bottomRightCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  return out;
}

namespace {

bool block_is_real(const SdpProblem::Block& b) {
  if (b.constant.imag().cwiseAbs().maxCoeff() > 0.0) return false;
  for (const auto& e : b.entries) {
    for (const auto& [i, j, c] : e.upper) {
      (void)i;
      (void)j;
      if (c.imag() != 0.0) return false;
    }
  }
  return true;
}

// Upper-triangle real triplets of the embedding of a single Hermitian
// contribution c at complex position (i, j), i <= j.
void emit_embedded(int n, int i, int j, Cplx c,
                   std::vector<std::tuple<int, int, double>>& out) {
  const double re = c.real();
  const double im = c.imag();
  if (re != 0.0) {
    out.emplace_back(i, j, re);
    out.emplace_back(n + i, n + j, re);
  }
  if (i == j) return;  // diagonal entries of a Hermitian matrix are real
  if (im != 0.0) {
    // top-right block -J: entry (i, n+j) = -im, (j, n+i) = +im
    out.emplace_back(i, n + j, -im);
    out.emplace_back(j, n + i, im);
  }
}

}  // namespace

RealForm build_real_form(const SdpProblem& p) {
  RealForm f;
  f.nparams = p.nparams();
  f.sense = p.sense();
  f.objective = p.objective_vector();
  for (const auto& eq : p.equalities()) {
    f.eqs.push_back({eq.terms, eq.rhs});
  }
  for (const auto& b : p.lmi_blocks()) {
    RealBlock rb;
    if (block_is_real(b)) {
      rb.dim = b.dim;
      rb.embedded = false;
      rb.constant = b.constant.real();
      for (const auto& e : b.entries) {
        RealBlockEntry re_entry;
        re_entry.param = e.param;
        for (const auto& [i, j, c] : e.upper) {
          re_entry.upper.emplace_back(i, j, c.real());
        }
        rb.entries.push_back(std::move(re_entry));
      }
    } else {
      rb.dim = 2 * b.dim;
      rb.embedded = true;
      rb.constant = embed_hermitian(b.constant);
      for (const auto& e : b.entries) {
        RealBlockEntry re_entry;
        re_entry.param = e.param;
        for (const auto& [i, j, c] : e.upper) {
          emit_embedded(b.dim, i, j, c, re_entry.upper);
        }
        if (!re_entry.upper.empty()) rb.entries.push_back(std::move(re_entry));
      }
    }
    f.blocks.push_back(std::move(rb));
  }
  return f;
}

}  // namespace bellcert::sdp
