#include "echinf/abelian.hpp"

#include <stdexcept>
#include <string>

#include "echinf/errors.hpp"
#include "echinf/field.hpp"

namespace echinf {

std::string FinAbGroup::describe() const
{
    if (is_trivial())
        return "0";
    std::string out;
    if (free_rank > 0)
        out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (std::size_t i = 0; i < torsion.size();) {
        std::size_t j = i;
        while (j < torsion.size() && torsion[j] == torsion[i])
            ++j;
        if (!out.empty())
            out += " + ";
        std::string z = "Z/" + to_string(torsion[i]);
        out += j - i == 1 ? z : "(" + z + ")^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

Cokernel::Cokernel(const IntMatrix& relations) : n_(relations.rows())
{
    snf_ = smith_normal_form(relations, SNFOptions{true, false, true, false});
    std::size_t r = snf_.rank();
    for (std::size_t i = 0; i < r; ++i)
        if (!is_unit(snf_.d[i])) {
            rows_.push_back(i);
            moduli_.push_back(snf_.d[i]);
        }
    for (std::size_t i = r; i < n_; ++i) {
        rows_.push_back(i);
        moduli_.push_back(0);
    }
}

FinAbGroup Cokernel::type() const
{
    FinAbGroup g;
    for (const auto& m : moduli_) {
        if (m == 0)
            ++g.free_rank;
        else
            g.torsion.push_back(m);
    }
    return g;
}

std::vector<Integer> Cokernel::coordinates(const std::vector<Integer>& v) const
{
    if (v.size() != n_)
        throw std::invalid_argument("vector length does not match cokernel ambient dimension");
    std::vector<Integer> u = snf_.left.apply(v);
    std::vector<Integer> out(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k)
        out[k] = moduli_[k] == 0 ? u[rows_[k]] : floor_mod(u[rows_[k]], moduli_[k]);
    return out;
}

std::vector<Integer> Cokernel::generator(std::size_t k) const
{
    return snf_.left_inverse.column(rows_.at(k));
}

bool Cokernel::is_zero(const std::vector<Integer>& v) const
{
    if (v.size() != n_)
        throw std::invalid_argument("vector length does not match cokernel ambient dimension");
    std::vector<Integer> u = snf_.left.apply(v);
    std::size_t r = snf_.rank();
    for (std::size_t i = 0; i < n_; ++i) {
        if (u[i] == 0)
            continue;
        if (i >= r || u[i] % snf_.d[i] != 0)
            return false;
    }
    return true;
}

namespace {

void check_composition(const IntMatrix& d_in, const IntMatrix& d_out)
{
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("composable pair dimension mismatch: d_out has " + std::to_string(d_out.cols()) +
                                    " columns, d_in has " + std::to_string(d_in.rows()) + " rows");
    IntMatrix comp = d_out * d_in;
    for (std::size_t j = 0; j < comp.cols(); ++j)
        for (std::size_t i = 0; i < comp.rows(); ++i)
            if (comp(i, j) != 0)
                throw CompositionNonzero(j, "d_out * d_in is nonzero on basis element " + std::to_string(j));
}

IntMatrix kernel_relations(const IntMatrix& kernel_coords, const IntMatrix& d_in)
{
    return kernel_coords * d_in;
}

}  // namespace

PairHomology::PairHomology(const IntMatrix& d_in, const IntMatrix& d_out)
    : m_(d_in.rows()), d_in_(d_in), d_out_(d_out), coker_(IntMatrix(0, 0))
{
    check_composition(d_in, d_out);
    SNFResult s = smith_normal_form(d_out, SNFOptions{false, true, false, true});
    std::size_t r = s.rank();
    kernel_ = s.right.select_cols(r, m_);
    kernel_coords_ = s.right_inverse.select_rows(r, m_);
    coker_ = Cokernel(kernel_relations(kernel_coords_, d_in));
    group_ = coker_.type();
    for (std::size_t k = 0; k < group_.dimension(); ++k)
        group_.generators.push_back(from_dense(kernel_.apply(coker_.generator(k))));
}

bool PairHomology::is_cycle(const std::vector<Integer>& v) const
{
    if (v.size() != m_)
        throw std::invalid_argument("vector length does not match pair dimension");
    for (const auto& x : d_out_.apply(v))
        if (x != 0)
            return false;
    return true;
}

std::vector<Integer> PairHomology::coordinates(const std::vector<Integer>& v) const
{
    if (!is_cycle(v))
        throw std::invalid_argument("vector is not a cycle");
    return coker_.coordinates(kernel_coords_.apply(v));
}

FinAbGroup homology_pair(const IntMatrix& d_in, const IntMatrix& d_out, bool torsion_generators)
{
    PairHomology h(d_in, d_out);
    FinAbGroup g = h.group();
    if (!torsion_generators)
        g.generators.erase(g.generators.begin(), g.generators.begin() + static_cast<std::ptrdiff_t>(g.torsion.size()));
    return g;
}

IntMatrix induced_map(const IntMatrix& f, const PairHomology& source, const PairHomology& target, const IntMatrix* f_up)
{
    if (f.cols() != source.ambient_dim() || f.rows() != target.ambient_dim())
        throw std::invalid_argument("chain map dimensions do not match the pairs");
    if (f_up != nullptr) {
        IntMatrix lhs = f * source.d_in();
        IntMatrix rhs = target.d_in() * *f_up;
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            for (std::size_t i = 0; i < lhs.rows(); ++i)
                if (lhs(i, j) != rhs(i, j))
                    throw NotChainMap(j, "f d != d' f on basis element " + std::to_string(j));
    }
    const FinAbGroup& g = source.group();
    IntMatrix out(target.group().dimension(), g.dimension());
    for (std::size_t k = 0; k < g.dimension(); ++k) {
        std::vector<Integer> image = f.apply(to_dense(g.generators[k], source.ambient_dim()));
        if (!target.is_cycle(image))
            throw NotChainMap(k, "image of homology generator " + std::to_string(k) + " is not a cycle");
        auto c = target.coordinates(image);
        for (std::size_t i = 0; i < c.size(); ++i)
            out(i, k) = c[i];
    }
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m)
{
    SNFResult s = smith_normal_form(m, SNFOptions{false, true, false, false});
    return s.right.select_cols(s.rank(), m.cols());
}

IntMatrix relation_matrix(const FinAbGroup& g)
{
    IntMatrix r(g.dimension(), g.torsion.size());
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
        r(i, i) = g.torsion[i];
    return r;
}

std::vector<Integer> reduce_element(const FinAbGroup& g, std::vector<Integer> v)
{
    if (v.size() != g.dimension())
        throw std::invalid_argument("element length does not match group dimension");
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
        v[i] = floor_mod(v[i], g.torsion[i]);
    return v;
}

bool element_is_zero(const FinAbGroup& g, const std::vector<Integer>& v)
{
    for (const auto& x : reduce_element(g, v))
        if (x != 0)
            return false;
    return true;
}

IntMatrix reduce_hom(const IntMatrix& m, const FinAbGroup& target)
{
    if (m.rows() != target.dimension())
        throw std::invalid_argument("homomorphism rows do not match target dimension");
    IntMatrix out = m;
    for (std::size_t i = 0; i < target.torsion.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = floor_mod(out(i, j), target.torsion[i]);
    return out;
}

bool hom_is_zero(const IntMatrix& m, const FinAbGroup& target, bool rational)
{
    if (rational)
        return m.is_zero();
    return reduce_hom(m, target).is_zero();
}

bool hom_equal(const IntMatrix& a, const IntMatrix& b, const FinAbGroup& target, bool rational)
{
    return hom_is_zero(a - b, target, rational);
}

IntMatrix hom_kernel(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target)
{
    if (m.cols() != source.dimension() || m.rows() != target.dimension())
        throw std::invalid_argument("homomorphism shape does not match groups");
    IntMatrix k = integer_kernel(m.hconcat(relation_matrix(target)));
    return k.select_rows(0, source.dimension());
}

bool in_subgroup(const std::vector<Integer>& v, const IntMatrix& generators, const FinAbGroup& group)
{
    Cokernel q(generators.hconcat(relation_matrix(group)));
    return q.is_zero(v);
}

bool is_injective(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, bool rational)
{
    if (rational)
        return rank_rational(m) == m.cols();
    IntMatrix k = hom_kernel(m, source, target);
    for (std::size_t j = 0; j < k.cols(); ++j)
        if (!element_is_zero(source, k.column(j)))
            return false;
    return true;
}

bool is_surjective(const IntMatrix& m, const FinAbGroup& target, bool rational)
{
    if (rational)
        return rank_rational(m) == m.rows();
    Cokernel q(m.hconcat(relation_matrix(target)));
    return q.type().is_trivial();
}

bool is_isomorphism(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, bool rational)
{
    return is_injective(m, source, target, rational) && is_surjective(m, target, rational);
}

bool is_exact(const IntMatrix& f, const IntMatrix& g, const FinAbGroup& a, const FinAbGroup& b, const FinAbGroup& c,
              bool rational)
{
    if (!hom_is_zero(g * f, c, rational))
        return false;
    if (rational)
        return rank_rational(f) + rank_rational(g) == b.free_rank;
    (void)a;
    IntMatrix k = hom_kernel(g, b, c);
    Cokernel q(f.hconcat(relation_matrix(b)));
    for (std::size_t j = 0; j < k.cols(); ++j)
        if (!q.is_zero(k.column(j)))
            return false;
    return true;
}

bool same_image(const IntMatrix& f, const IntMatrix& h, const FinAbGroup& target, bool rational)
{
    if (rational) {
        std::size_t rf = rank_rational(f);
        return rf == rank_rational(h) && rf == rank_rational(f.hconcat(h));
    }
    Cokernel qf(f.hconcat(relation_matrix(target)));
    Cokernel qh(h.hconcat(relation_matrix(target)));
    for (std::size_t j = 0; j < h.cols(); ++j)
        if (!qf.is_zero(h.column(j)))
            return false;
    for (std::size_t j = 0; j < f.cols(); ++j)
        if (!qh.is_zero(f.column(j)))
            return false;
    return true;
}

FinAbGroup image_type(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, bool rational)
{
    if (rational) {
        FinAbGroup g;
        g.free_rank = rank_rational(m);
        return g;
    }
    FinAbGroup t;
    image_basis(m, source, target, &t);
    return t;
}

IntMatrix image_basis(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, FinAbGroup* type)
{
    IntMatrix k = hom_kernel(m, source, target);
    Cokernel q(k.hconcat(relation_matrix(source)));
    FinAbGroup t = q.type();
    IntMatrix basis(target.dimension(), t.dimension());
    for (std::size_t j = 0; j < t.dimension(); ++j) {
        auto v = reduce_element(target, m.apply(q.generator(j)));
        for (std::size_t i = 0; i < v.size(); ++i)
            basis(i, j) = v[i];
    }
    if (type != nullptr)
        *type = t;
    return basis;
}

FinAbGroup direct_sum_type(const std::vector<FinAbGroup>& parts)
{
    FinAbGroup out;
    std::vector<Integer> orders;
    for (const auto& g : parts) {
        out.free_rank += g.free_rank;
        orders.insert(orders.end(), g.torsion.begin(), g.torsion.end());
    }
    if (orders.empty())
        return out;
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
        diag(i, i) = orders[i];
    SNFResult s = smith_normal_form(diag, SNFOptions{false, false, false, false});
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (!is_unit(s.d[i]))
            out.torsion.push_back(s.d[i]);
    return out;
}

}  // namespace echinf
