#include "affst/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace affst {

namespace {

// Dense LU-free basis handling: with r <= 4 rows we just invert the basis
// matrix by Gaussian elimination each pivot. r^3 per pivot is negligible.
struct Tableau {
    int r;
    std::vector<double> binv;  // r x r row-major inverse of basis matrix

    explicit Tableau(int rows) : r(rows), binv(rows * rows, 0.0) {
        for (int i = 0; i < r; ++i) binv[i * r + i] = 1.0;
    }

    void set_from(const std::vector<const double*>& cols) {
        std::vector<double> m(r * r);
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) m[i * r + j] = cols[j][i];
        // invert m into binv
        std::vector<double> inv(r * r, 0.0);
        for (int i = 0; i < r; ++i) inv[i * r + i] = 1.0;
        for (int col = 0; col < r; ++col) {
            int piv = col;
            for (int i = col + 1; i < r; ++i)
                if (std::abs(m[i * r + col]) > std::abs(m[piv * r + col])) piv = i;
            if (std::abs(m[piv * r + col]) < 1e-300) throw std::runtime_error("singular basis");
            if (piv != col) {
                for (int j = 0; j < r; ++j) {
                    std::swap(m[piv * r + j], m[col * r + j]);
                    std::swap(inv[piv * r + j], inv[col * r + j]);
                }
            }
            double d = m[col * r + col];
            for (int j = 0; j < r; ++j) {
                m[col * r + j] /= d;
                inv[col * r + j] /= d;
            }
            for (int i = 0; i < r; ++i) {
                if (i == col) continue;
                double f = m[i * r + col];
                if (f == 0.0) continue;
                for (int j = 0; j < r; ++j) {
                    m[i * r + j] -= f * m[col * r + j];
                    inv[i * r + j] -= f * inv[col * r + j];
                }
            }
        }
        binv = inv;
    }

    void apply(const double* v, double* out) const {
        for (int i = 0; i < r; ++i) {
            double s = 0.0;
            for (int j = 0; j < r; ++j) s += binv[i * r + j] * v[j];
            out[i] = s;
        }
    }

    void apply_T(const double* v, double* out) const {
        for (int j = 0; j < r; ++j) {
            double s = 0.0;
            for (int i = 0; i < r; ++i) s += binv[i * r + j] * v[i];
            out[j] = s;
        }
    }
};

struct SimplexState {
    int r, m;
    const std::vector<std::vector<double>>* cols;
    std::vector<std::vector<double>> art;  // artificial columns (identity +-)
    std::vector<int> basis;                // column ids; >= m means artificial id-m

    const double* column(int id) const {
        return id < m ? (*cols)[id].data() : art[id - m].data();
    }
};

bool run_simplex(SimplexState& st, const std::vector<double>& cost_full,
                 const std::vector<double>& rhs, std::vector<double>& xb,
                 std::vector<double>& duals, double& value) {
    const int r = st.r;
    Tableau tab(r);
    std::vector<const double*> bc(r);
    std::vector<double> cb(r), w(r), d(r);
    int stall = 0;
    for (int iter = 0; iter < 4000; ++iter) {
        for (int i = 0; i < r; ++i) {
            bc[i] = st.column(st.basis[i]);
            cb[i] = cost_full[st.basis[i]];
        }
        tab.set_from(bc);
        tab.apply(rhs.data(), xb.data());
        tab.apply_T(cb.data(), duals.data());
        // pricing
        int enter = -1;
        double best = -1e-9;
        bool bland = stall > 200;
        int ncols = st.m + static_cast<int>(st.art.size());
        for (int jid = 0; jid < ncols; ++jid) {
            bool in_basis = false;
            for (int i = 0; i < r; ++i) in_basis |= (st.basis[i] == jid);
            if (in_basis) continue;
            const double* a = st.column(jid);
            double red = cost_full[jid];
            for (int i = 0; i < r; ++i) red -= duals[i] * a[i];
            if (red < best) {
                enter = jid;
                if (bland) break;
                best = red;
            }
        }
        if (enter < 0) {
            value = 0.0;
            for (int i = 0; i < r; ++i) value += cb[i] * xb[i];
            return true;  // optimal
        }
        tab.apply(st.column(enter), d.data());
        int leave = -1;
        double tmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < r; ++i) {
            if (d[i] > 1e-11) {
                double t = xb[i] / d[i];
                if (t < tmin - 1e-13 || (t < tmin + 1e-13 && (leave < 0 || st.basis[i] < st.basis[leave]))) {
                    tmin = t;
                    leave = i;
                }
            }
        }
        if (leave < 0) return false;  // unbounded (cannot happen in phase 1)
        if (tmin < 1e-13) ++stall; else stall = 0;
        st.basis[leave] = enter;
    }
    throw std::runtime_error("simplex: iteration limit");
}

}  // namespace

LpResult solve_equality_lp(const std::vector<std::vector<double>>& columns,
                           const std::vector<double>& cost,
                           const std::vector<double>& rhs) {
    const int m = static_cast<int>(columns.size());
    const int r = static_cast<int>(rhs.size());
    LpResult res;
    if (m == 0) return res;

    SimplexState st;
    st.r = r;
    st.m = m;
    st.cols = &columns;
    // artificial identity columns signed to match rhs
    st.art.resize(r);
    st.basis.resize(r);
    for (int i = 0; i < r; ++i) {
        st.art[i].assign(r, 0.0);
        st.art[i][i] = rhs[i] >= 0 ? 1.0 : -1.0;
        st.basis[i] = m + i;
    }

    double scale = 1.0;
    for (int i = 0; i < r; ++i) scale = std::max(scale, std::abs(rhs[i]));

    // phase 1: minimise sum of artificials
    std::vector<double> cost1(m + r, 0.0);
    for (int i = 0; i < r; ++i) cost1[m + i] = 1.0;
    std::vector<double> xb(r), duals(r);
    double v1 = 0.0;
    if (!run_simplex(st, cost1, rhs, xb, duals, v1)) return res;
    if (v1 > 1e-9 * scale) return res;  // infeasible

    // phase 2: original objective; keep artificials priced out
    std::vector<double> cost2(m + r, 0.0);
    double bigM = 0.0;
    for (int j = 0; j < m; ++j) bigM = std::max(bigM, std::abs(cost[j]));
    for (int j = 0; j < m; ++j) cost2[j] = cost[j];
    for (int i = 0; i < r; ++i) cost2[m + i] = 1e6 * (bigM + 1.0);
    double v2 = 0.0;
    if (!run_simplex(st, cost2, rhs, xb, duals, v2)) return res;  // unbounded
    res.feasible = true;
    res.value = v2;
    res.duals = duals;
    return res;
}

}  // namespace affst
