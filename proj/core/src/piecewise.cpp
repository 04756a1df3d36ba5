#include "schrodiv/piecewise.hpp"

#include <stdexcept>

namespace schrodiv {

PiecewiseLinearCurve::PiecewiseLinearCurve(std::vector<LinearPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("piecewise curve needs at least one segment");
  validate();
}

Rat PiecewiseLinearCurve::domain_lo() const { return pieces_.front().alpha_lo; }
Rat PiecewiseLinearCurve::domain_hi() const { return pieces_.back().alpha_hi; }

bool PiecewiseLinearCurve::contains(const Rat& alpha) const {
  return alpha >= domain_lo() && alpha <= domain_hi();
}

std::size_t PiecewiseLinearCurve::index_of(const Rat& alpha) const {
  if (!contains(alpha)) throw std::invalid_argument("alpha outside curve domain");
  // Breakpoints belong to the left segment: first piece with alpha <= alpha_hi.
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (alpha <= pieces_[i].alpha_hi) return i;
  return pieces_.size() - 1;
}

Rat PiecewiseLinearCurve::eval(const Rat& alpha) const { return pieces_[index_of(alpha)].eval(alpha); }

const LinearPiece& PiecewiseLinearCurve::piece_at(const Rat& alpha) const {
  return pieces_[index_of(alpha)];
}

std::vector<Rat> PiecewiseLinearCurve::breakpoints() const {
  std::vector<Rat> out;
  out.push_back(pieces_.front().alpha_lo);
  for (const auto& p : pieces_) out.push_back(p.alpha_hi);
  return out;
}

void PiecewiseLinearCurve::validate() const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.alpha_lo >= p.alpha_hi) throw std::logic_error("degenerate segment in piecewise curve");
    if (p.slope > 0) throw std::logic_error("increasing segment in piecewise curve");
    if (i + 1 < pieces_.size()) {
      const auto& nxt = pieces_[i + 1];
      if (p.alpha_hi != nxt.alpha_lo) throw std::logic_error("non-contiguous piecewise curve");
      if (p.eval(p.alpha_hi) != nxt.eval(nxt.alpha_lo))
        throw std::logic_error("discontinuous piecewise curve at a junction");
    }
  }
}

}  // namespace schrodiv
