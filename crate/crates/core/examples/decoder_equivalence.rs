//! The ideal network, the convolution decoder and the Hamming decoder accept
//! exactly the same inputs. Walks every input of an N=7 space.

use nnamm::coding::{convolution, hamming};
use nnamm::network::{decode_convolution, decode_hamming, NeuronConfig};
use nnamm::{seeded_rng, SpinVector, SynapticMatrix};

fn main() -> nnamm::Result<()> {
    let n = 7;
    let etalon = SpinVector::random(n, &mut seeded_rng(1))?;
    let net = SynapticMatrix::train_ideal(&etalon, 1.0)?;
    let cfg = NeuronConfig::default();
    let mut accepted_by_distance = vec![0usize; n + 1];
    for bits in 0u64..1 << n {
        let x = SpinVector::from_bits(n, bits)?;
        let by_net = net.forward(&x, &cfg)? == etalon;
        assert_eq!(by_net, decode_convolution(&etalon, &x, 0.0, 1.0)?);
        assert_eq!(by_net, decode_hamming(&etalon, &x)?);
        if by_net {
            accepted_by_distance[hamming(&etalon, &x)?] += 1;
        }
    }
    println!("etalon {etalon}: all {} inputs agree across decoders", 1 << n);
    for (d, count) in accepted_by_distance.iter().enumerate() {
        println!("D={d} Q={:>3} accepted={count}", n as i64 - 2 * d as i64);
    }
    let anti = etalon.negated();
    println!("antipode Q = {}", convolution(&etalon, &anti)?);
    Ok(())
}
