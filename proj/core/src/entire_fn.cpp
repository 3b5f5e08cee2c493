#include <cmath>
#include <sstream>

#include "dbscale/fncore.hpp"
#include "node.hpp"

namespace dbscale {

namespace {

std::shared_ptr<detail::Node> make_node(EntireFn::Kind kind) {
  auto node = std::make_shared<detail::Node>();
  node->kind = kind;
  return node;
}

}  // namespace

EntireFn::EntireFn() : node_(make_node(Kind::LinComb)) {}

EntireFn EntireFn::e() { return EntireFn(make_node(Kind::E)); }

EntireFn EntireFn::e_sharp() { return EntireFn(make_node(Kind::ESharp)); }

EntireFn EntireFn::s(double gamma) {
  auto node = make_node(Kind::S);
  node->gamma = gamma;
  return EntireFn(std::move(node));
}

EntireFn EntireFn::kernel(Cplx w) {
  auto node = make_node(Kind::Kernel);
  node->point = w;
  return EntireFn(std::move(node));
}

EntireFn EntireFn::user(std::string label, std::function<Cplx(Cplx)> eval, TaylorFn taylor) {
  if (!eval) throw Error(ErrorCode::InvalidArgument, "user function needs an evaluator");
  auto node = make_node(Kind::User);
  node->label = std::move(label);
  node->user_eval = std::move(eval);
  node->user_taylor = std::move(taylor);
  return EntireFn(std::move(node));
}

EntireFn EntireFn::lin_comb(std::vector<Cplx> coeffs, std::vector<EntireFn> terms) {
  if (coeffs.size() != terms.size()) {
    throw Error(ErrorCode::InvalidArgument, "lin_comb needs one coefficient per term");
  }
  auto node = make_node(Kind::LinComb);
  node->coeffs = std::move(coeffs);
  node->terms = std::move(terms);
  return EntireFn(std::move(node));
}

EntireFn EntireFn::mul_affine(Cplx w, EntireFn term) {
  auto node = make_node(Kind::MulAffine);
  node->point = w;
  node->terms = {std::move(term)};
  return EntireFn(std::move(node));
}

EntireFn EntireFn::unchecked_diff_quotient(EntireFn term, Cplx c, EntireFn pivot, Cplx w) {
  auto node = make_node(Kind::DiffQuotient);
  node->point = w;
  node->coeff = c;
  node->terms = {std::move(term), std::move(pivot)};
  return EntireFn(std::move(node));
}

EntireFn EntireFn::diff_quotient(const DbSpace& space, EntireFn term, Cplx c, EntireFn pivot,
                                 Cplx w) {
  const Cplx t = detail::eval_node(term.node(), space, w);
  const Cplx p = pivot.is_zero() ? Cplx{} : detail::eval_node(pivot.node(), space, w);
  const double residual = std::abs(t - c * p);
  const double scale = 1.0 + std::abs(t) + std::abs(c * p);
  if (!(residual <= space.removable_tol() * scale)) {
    std::ostringstream os;
    os << "quotient at w=" << w << " has numerator " << residual << " at the pivot";
    throw Error(ErrorCode::RemovabilityViolation, os.str());
  }
  return unchecked_diff_quotient(std::move(term), c, std::move(pivot), w);
}

EntireFn::Kind EntireFn::kind() const noexcept { return node_->kind; }

bool EntireFn::is_zero() const noexcept {
  return node_->kind == Kind::LinComb && node_->terms.empty();
}

std::size_t EntireFn::size() const {
  std::size_t n = 1;
  for (const auto& t : node_->terms) n += t.size();
  return n;
}

std::string EntireFn::describe() const {
  std::ostringstream os;
  os.precision(6);
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::E: os << "e"; break;
    case Kind::ESharp: os << "e#"; break;
    case Kind::S: os << "s[" << n.gamma << "]"; break;
    case Kind::Kernel: os << "k(.," << n.point << ")"; break;
    case Kind::User: os << n.label; break;
    case Kind::LinComb:
      if (n.terms.empty()) {
        os << "0";
        break;
      }
      os << "(";
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        if (i) os << " + ";
        os << n.coeffs[i] << "*" << n.terms[i].describe();
      }
      os << ")";
      break;
    case Kind::MulAffine: os << "(z-" << n.point << ")*" << n.terms[0].describe(); break;
    case Kind::DiffQuotient:
      os << "[" << n.terms[0].describe() << " - " << n.coeff << "*" << n.terms[1].describe()
         << "]/(z-" << n.point << ")";
      break;
  }
  return os.str();
}

EntireFn operator+(const EntireFn& f, const EntireFn& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  return EntireFn::lin_comb({1.0, 1.0}, {f, g});
}

EntireFn operator-(const EntireFn& f, const EntireFn& g) {
  if (g.is_zero()) return f;
  return EntireFn::lin_comb({1.0, -1.0}, {f, g});
}

EntireFn operator*(Cplx c, const EntireFn& f) {
  if (f.is_zero()) return f;
  return EntireFn::lin_comb({c}, {f});
}

EntireFn sharp(const EntireFn& f) {
  using Kind = EntireFn::Kind;
  const auto& n = f.node();
  switch (n.kind) {
    case Kind::E: return EntireFn::e_sharp();
    case Kind::ESharp: return EntireFn::e();
    case Kind::S: return f;  // real entire for real gamma
    case Kind::Kernel: return EntireFn::kernel(std::conj(n.point));
    case Kind::User: {
      auto eval = n.user_eval;
      EntireFn::TaylorFn taylor;
      if (n.user_taylor) {
        taylor = [inner = n.user_taylor](Cplx z, std::span<Cplx> out) {
          inner(std::conj(z), out);
          for (auto& c : out) c = std::conj(c);
        };
      }
      return EntireFn::user(
          n.label + "#", [eval](Cplx z) { return std::conj(eval(std::conj(z))); },
          std::move(taylor));
    }
    case Kind::LinComb: {
      if (f.is_zero()) return f;
      std::vector<Cplx> coeffs;
      std::vector<EntireFn> terms;
      coeffs.reserve(n.coeffs.size());
      terms.reserve(n.terms.size());
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        coeffs.push_back(std::conj(n.coeffs[i]));
        terms.push_back(sharp(n.terms[i]));
      }
      return EntireFn::lin_comb(std::move(coeffs), std::move(terms));
    }
    case Kind::MulAffine:
      return EntireFn::mul_affine(std::conj(n.point), sharp(n.terms[0]));
    case Kind::DiffQuotient:
      return EntireFn::unchecked_diff_quotient(sharp(n.terms[0]), std::conj(n.coeff),
                                               sharp(n.terms[1]), std::conj(n.point));
  }
  return f;
}

}  // namespace dbscale
