#include "tensorinv/raising.hpp"

#include <stdexcept>

namespace tensorinv {

std::string RaisingOp::label() const {
  return "U" + std::to_string(index + 1) + "^(" + std::to_string(mode + 1) + ")";
}

std::vector<int> cartan_row(int n, int i) {
  if (n < 2 || i < 0 || i > n - 2)
    throw std::out_of_range("Cartan row " + std::to_string(i + 1) + " out of range for sl_" +
                            std::to_string(n));
  std::vector<int> row(n - 1, 0);
  row[i] = 2;
  if (i > 0) row[i - 1] = -1;
  if (i + 1 < n - 1) row[i + 1] = -1;
  return row;
}

std::vector<RaisingOp> simple_raising_ops(const Format& format) {
  std::vector<RaisingOp> ops;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i + 1 < format.dim(m); ++i) ops.push_back({m, i});
  return ops;
}

Weight target_weight(const RaisingOp& op, const Format& format) {
  Weight w = Weight::zero(format);
  w.modes[op.mode] = cartan_row(format.dim(op.mode), op.index);
  return w;
}

std::vector<RaisedTerm> apply_raising(const RaisingOp& op, const ExponentArray& e) {
  const Format& f = e.format();
  if (op.index < 0 || op.index + 1 >= f.dim(op.mode))
    throw std::out_of_range("operator " + op.label() + " out of range for " + f.to_string());
  std::vector<RaisedTerm> out;
  for_each_raising_move(op, f, e.flat(), [&](std::int64_t c, std::size_t from, std::size_t to) {
    ExponentArray image = e;
    image.flat()[from] -= 1;
    image.flat()[to] += 1;
    out.push_back({c, std::move(image)});
  });
  return out;
}

OperatorBlock operator_block(const RaisingOp& op, const MonomialBasis& domain) {
  const Format& f = domain.format();
  OperatorBlock block{op, {}, {}};
  if (domain.empty()) {
    block.codomain = MonomialBasis(f);
    return block;
  }
  const int degree = domain.array(0).degree();
  block.codomain = enumerate_weight_space(f, degree, target_weight(op, f));
  block.rows.resize(block.codomain.size());

  std::vector<Exponent> image(f.size());
  for (std::size_t col = 0; col < domain.size(); ++col) {
    const auto src = domain[col];
    for_each_raising_move(op, f, src, [&](std::int64_t c, std::size_t from, std::size_t to) {
      std::copy(src.begin(), src.end(), image.begin());
      image[from] -= 1;
      image[to] += 1;
      const auto row = block.codomain.find(image);
      if (!row)
        throw std::logic_error("image " + to_flat_string(image) + " of " + op.label() +
                               " missing from the codomain basis");
      auto& entries = block.rows[*row];
      if (!entries.empty() && entries.back().column == col)
        entries.back().coefficient += c;
      else
        entries.push_back({std::uint32_t(col), c});
    });
  }
  return block;
}

OperatorBlock operator_block(const RaisingOp& op, int degree, const Format& format) {
  return operator_block(op, enumerate_weight_space(format, degree, Weight::zero(format)));
}

}  // namespace tensorinv
