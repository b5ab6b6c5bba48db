"""Second derivative of the reduced distance phi(r) = min_c |h - l(r)^p c|^2 at
the critical roots of the n = 15, a = 6 example (primal and dual side).

Run: python3 tests/oracles/reduced_hessian.py
"""
import mpmath as mp
mp.mp.dps = 50
n, a = 15, 6
u = [20,-17,3,16,12,14,-16,-5,7,8,-13,5,-13,-16,7,-11]
hc = [mp.binomial(n,i)*u[i] for i in range(n+1)]
w = [1/mp.binomial(n,i) for i in range(n+1)]
def phi(r, p=a, dual=False):
    q = n - p
    basis = []
    for j in range(q+1):
        out = [mp.mpf(0)]*(n+1)
        for i in range(p+1):
            # primal l = x - r y ; dual l = r x + y
            c = mp.binomial(p,i)*((-r)**(p-i) if not dual else r**i)
            out[i+j] += c
        basis.append(out)
    G = mp.matrix(len(basis)); b = mp.matrix(len(basis),1)
    for P,bp in enumerate(basis):
        b[P] = sum(w[i]*bp[i]*hc[i] for i in range(n+1))
        for Q,bq in enumerate(basis):
            G[P,Q] = sum(w[i]*bp[i]*bq[i] for i in range(n+1))
    c = mp.lu_solve(G,b)
    return sum(w[i]*hc[i]**2 for i in range(n+1)) - sum(c[P]*b[P] for P in range(len(basis)))
for r in [8.70886,3.70567,2.19850,0.05736,-0.38870,-3.49092,-5.71229,-0.22118,1.25359,0.25811,0.48187,0.80694,-0.68808,-1.67383,-1.06515]:
    r0 = mp.findroot(lambda z: mp.diff(phi, z), mp.mpf(r))
    print(mp.nstr(r0,8), mp.nstr(phi(r0),10), "phi''=", mp.nstr(mp.diff(phi, r0, 2),6),
          " dual psi''=", mp.nstr(mp.diff(lambda z: phi(z, n-a+2, True), r0, 2),6), mp.nstr(phi(r0,n-a+2,True),10))
